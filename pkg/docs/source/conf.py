# Configuration file for the Sphinx documentation builder.
#
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

# API pages use the bare module names, so the package directory goes on the path
import os
import sys
sys.path.insert(0, os.path.abspath('../../src/ksquant'))
sys.path.insert(0, os.path.abspath('../../src'))


# -- Project information -----------------------------------------------------

project = 'ksquant'
copyright = 'ksquant developers'
author = 'ksquant developers'

release = '0.1.0'


# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon"
]

templates_path = ['_templates']

exclude_patterns = []


# -- Options for HTML output -------------------------------------------------

html_theme = 'alabaster'

html_theme_options = {
    "description": "exact quantization maps and Kochen-Specker colorability",
    "fixed_sidebar": True
}

html_static_path = ['_static']

autodoc_mock_imports = ['scipy']
