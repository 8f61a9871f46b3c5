"""
Roots in F9[t] of monic polynomials whose coefficients lie in F9[t].

A polynomial root ``r(t)`` of degree at most ``d`` is fixed by its values at
``d + 1`` points, and each value is a root of the specialized polynomial over
F9. The search therefore enumerates value combinations at the ``d + 1`` nodes
with the fewest roots, interpolates, and keeps the candidates that vanish
identically.
"""

from __future__ import annotations

import itertools
import logging
from typing import List, Sequence

from ..errors import FieldError
from .field import ELEMENTS, F9, Field, FieldElement
from .poly import Polynomial, interpolate

logger = logging.getLogger(__name__)

#: upper bound on enumerated value combinations
MAX_COMBINATIONS = 3 ** 9


def _specialize(coeffs: Sequence[Polynomial], tau: FieldElement) -> Polynomial:
    return Polynomial([c(tau) for c in coeffs] + [1])


def _evaluate(coeffs: Sequence[Polynomial], r: Polynomial) -> Polynomial:
    acc = Polynomial.constant(1)
    for c in reversed(coeffs):
        acc = acc * r + c
    return acc


def polynomial_roots(coeffs: Sequence[Polynomial], max_degree: int, field: Field = F9) -> List[Polynomial]:
    """
    Roots ``r`` in ``field[t]`` with ``deg r <= max_degree`` of
    ``X^n + coeffs[n-1] X^(n-1) + ... + coeffs[0]``.

    Args:
        coeffs: the non-leading coefficients, constant term first.
        max_degree: degree cap for the roots; at most 8 so that the nodes
            fit in F9.

    Returns:
        Distinct roots sorted by degree, then by their printed form.
    """
    if max_degree < 0:
        return []
    if max_degree + 1 > len(ELEMENTS):
        raise FieldError(f"root degree cap {max_degree} exceeds what F9 can interpolate")
    per_node = []
    for tau in ELEMENTS:
        specialized = _specialize(coeffs, tau)
        values = [a for a in ELEMENTS if not specialized(a)]
        if not values:
            return []
        per_node.append((len(values), tau.index, tau, values))
    per_node.sort(key=lambda item: (item[0], item[1]))
    nodes = per_node[: max_degree + 1]
    combos = 1
    for item in nodes:
        combos *= item[0]
    if combos > MAX_COMBINATIONS:
        raise FieldError(f"root search would enumerate {combos} candidates")
    logger.debug("polynomial root search over %d candidates", combos)
    found = {}
    for values in itertools.product(*(item[3] for item in nodes)):
        r = interpolate([(item[2], v) for item, v in zip(nodes, values)])
        if r.degree > max_degree or not r.in_field(field):
            continue
        if not _evaluate(coeffs, r):
            found[r] = None
    return sorted(found, key=lambda p: (p.degree, str(p)))
