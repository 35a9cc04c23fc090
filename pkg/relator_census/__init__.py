# relator-census
# __init__.py

__version__ = '0.1.0'
__description__ = "Count, sample and test generic one-relator group presentations"
__author__ = "relator-census developers"
__license__ = "MIT"

import logging
from .errors import *
from .words import *
from .symmetry import *
from .genericity import *
from .presentations import *
from .dehn import *
from .search import *
from .complexity import *

logging.getLogger(__name__).addHandler(logging.NullHandler())
