from relator_census import *
from relator_census.cli import *
