# Sphinx configuration for the k3fib documentation.
#
# https://www.sphinx-doc.org/en/master/usage/configuration.html

from importlib.metadata import PackageNotFoundError, version

# -- Project information -----------------------------------------------------

project = 'k3fib'
copyright = '2025, Charilaos Mylonas'
author = 'Charilaos Mylonas'
try:
    release = version('k3fib')
except PackageNotFoundError:
    release = '0.3.0'
version = '.'.join(release.split('.')[:2])

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.autosummary',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx_copybutton',
]

# docstrings use Google-style Args/Returns/Raises sections
napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_use_rtype = False

autodoc_member_order = 'bysource'
autodoc_typehints = 'description'
autosummary_generate = True

# shell prompts in the CLI examples are not copied
copybutton_prompt_text = r'\$ '
copybutton_prompt_is_regexp = True

templates_path = ['_templates']
exclude_patterns = []

# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
html_title = f'k3fib {release}'
