# -*- coding: utf-8 -*-
#
# colfin documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.

import sys
import os

# If extensions (or modules to document with autodoc) are in another directory,
# add these directories to sys.path here.
sys.path.insert(0, os.path.abspath('..'))

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode', 'sphinx.ext.todo',
              'sphinx.ext.intersphinx']

templates_path = ['_templates']
source_suffix = '.rst'
source_encoding = 'utf-8'
master_doc = 'index'

project = 'colfin'
copyright = 'colfin contributors'

import colfin
from colfin.utils import version_info

# The short X.Y version.
version = '.'.join(str(x) for x in version_info()[:2])
# The full version, including alpha/beta/rc tags.
release = colfin.__version__

exclude_patterns = []
pygments_style = 'sphinx'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'alabaster'
html_static_path = []
htmlhelp_basename = 'colfindoc'

# -- Options for LaTeX and manual page output ----------------------------------

latex_documents = [
    ('index', 'colfin.tex', 'colfin documentation',
     'colfin contributors', 'manual'),
]

man_pages = [
    ('index', 'colfin', 'colfin Documentation',
     ['colfin contributors'], 1)
]

# -- Options for todo module ---------------------------------------------------

todo_include_todos = False

# -- Options for autodoc module ------------------------------------------------

autoclass_content = 'both'
autodoc_member_order = 'bysource'
autodoc_default_flags = []

# -- Options for intersphinx module --------------------------------------------

intersphinx_mapping = {
    'http://docs.python.org/': ('https://docs.python.org/3', None),
}
