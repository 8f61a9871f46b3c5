"""
Intersection with the zero section and the height pairing.

``h(P) = 2 chi + 2 (P.O) - sum_v contr_v(P)``; pairings of distinct
sections come from polarization, which needs no ``P.Q`` bookkeeping.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, Sequence

import sympy

from ..algebra.poly import squarefree_factorization
from ..errors import ModelError
from ..lattice.contributions import contribution
from ..model.maps import point_at_infinity
from ..model.points import SurfacePoint, add_points, is_on_curve
from ..tate.sections import component_of_section
from .context import HeightContext

logger = logging.getLogger(__name__)


def _pole_intersection(pole_order: int) -> int:
    return max(0, -(-pole_order // 2))


def intersect_with_zero(ctx: HeightContext, p: SurfacePoint) -> int:
    """
    ``P.O``: half the pole order of ``x`` summed over all places.

    Finite poles are read off the denominator of ``x``; at infinity the
    coordinate is ``s^4 x(1/s)``. The model is assumed minimal.
    """
    if p.is_zero:
        raise ModelError("P.O is not defined for the zero section itself")
    x, _ = p.coordinates
    total = 0
    if x.den.degree > 0:
        for fac, mult in squarefree_factorization(x.den):
            total += fac.degree * _pole_intersection(mult)
    x_inf, _ = point_at_infinity(p).coordinates
    pole = x_inf.den.order() - x_inf.num.order() if x_inf else 0
    total += _pole_intersection(pole)
    return total


def correction_terms(ctx: HeightContext, p: SurfacePoint) -> Dict[str, Fraction]:
    """``contr_v(P, P)`` for every reducible fiber, keyed by place label."""
    out: Dict[str, Fraction] = {}
    for fd in ctx.config.reducible():
        comp = component_of_section(ctx.model, p, fd)
        out[fd.place.label] = contribution(fd.lattice_label, comp, comp)
    return out


def height(ctx: HeightContext, p: SurfacePoint) -> Fraction:
    if p.is_zero:
        return Fraction(0)
    if not is_on_curve(ctx.model, p):
        raise ModelError(f"{p} is not a point of {ctx.model}")
    po = intersect_with_zero(ctx, p)
    corrections = correction_terms(ctx, p)
    h = 2 * ctx.chi + 2 * po - sum(corrections.values(), Fraction(0))
    logger.debug("h(%s) = %s (P.O = %d, corrections %s)", p, h, po, corrections)
    return Fraction(h)


def height_pairing(ctx: HeightContext, p: SurfacePoint, q: SurfacePoint) -> Fraction:
    if p == q:
        return height(ctx, p)
    total = add_points(ctx.model, p, q)
    return (height(ctx, total) - height(ctx, p) - height(ctx, q)) / 2


def mwl_gram(ctx: HeightContext, sections: Sequence[SurfacePoint]) -> sympy.Matrix:
    """Gram matrix of the height pairing on ``sections``."""
    n = len(sections)
    g = sympy.zeros(n, n)
    for a in range(n):
        for b in range(a, n):
            value = height_pairing(ctx, sections[a], sections[b])
            g[a, b] = g[b, a] = sympy.Rational(value.numerator, value.denominator)
    return g
