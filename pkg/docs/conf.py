# Configuration file for the Sphinx documentation builder.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys
import re
import pathlib
sys.path.insert(0, os.path.abspath('..'))


# -- Project information -----------------------------------------------------

project = 'relator-census'
copyright = '2026, relator-census developers'
author = 'relator-census developers'


# relator_census/__init__.py holds the version, read it as text
_init = pathlib.Path(__file__).parent.parent / "relator_census" / "__init__.py"
_version = re.search(r"__version__ = '([^']+)'", _init.read_text())
if _version is None:
    raise RuntimeError("__version__ not found in %s" % _init)

version = _version.group(1)
release = version


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax'
]

# No typing in docs
autodoc_typehints = 'none'

templates_path = ['_templates']
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable', None),
}

# -- Options for HTML output -------------------------------------------------

html_theme = 'furo'
html_static_path = ['_static']
