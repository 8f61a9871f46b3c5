"""Exact arithmetic over F3 and F9 = F3[i], polynomials in t, places and local expansions."""

from .field import ELEMENTS, F3, F9, I, ONE, TWO, ZERO, Field, FieldElement, coerce, field_arith
from .parse import parse_polynomial, parse_rational, parse_section, split_section
from .place import (
    INFINITY,
    Place,
    laurent_expand,
    local_expand,
    local_parts,
    local_polynomial,
    rational_places,
    reduce_at,
    valuation,
)
from .poly import (
    ONE_POLY,
    T,
    ZERO_POLY,
    Polynomial,
    field_roots,
    interpolate,
    is_squarefree,
    poly_arith,
    poly_gcd,
    poly_lcm,
    roots_with_multiplicity,
    squarefree_factorization,
    squarefree_split,
)
from .rational import RationalFunction, as_rational, numerator_denominator
from .roots import polynomial_roots
from .series import ONE_SERIES, ZERO_SERIES, LaurentSeries
