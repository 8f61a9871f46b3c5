"""
Exact toolkit for elliptic and quasi-elliptic fibrations in characteristic 3.

The subpackages build on each other: ``algebra`` (F9, polynomials, places),
``model`` (Weierstrass models, group law, conversions), ``tate`` (fiber
classification), ``lattice`` (root lattices, Niemeier tables), ``mordell``
(heights, torsion, discriminant identity), ``neighbor`` (2- and 3-neighbor
steps) and ``corpus`` (the catalog of 52 fibrations and its verification).
"""

import logging
from importlib.metadata import PackageNotFoundError, version

from .errors import (
    ClassificationError,
    CorpusError,
    FieldError,
    K3FibException,
    LatticeError,
    ModelError,
    NeighborError,
    ParseError,
    UnsupportedPlaceError,
)
from .options import VerifyOptions

logging.getLogger(__name__).addHandler(logging.NullHandler())

try:
    __version__ = version("k3fib")
except PackageNotFoundError:
    # not installed, e.g. tests run from a source checkout
    __version__ = "unknown"
