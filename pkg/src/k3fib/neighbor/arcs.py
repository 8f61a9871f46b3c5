"""
Formal arcs through general points of fiber components.

An arc at ``place`` is ``s = c0 sigma^m`` together with
``x = centre(s) + xi sigma^depth`` and ``y = +-sqrt(x^3 + a2 x^2 + a4 x + a6)``
in the local coordinates of the classification. For a component of
multiplicity ``m`` and depth ``depth`` it meets the component once at a
general point, so the order in ``sigma`` of a function along the arc is its
order along the component.

Arcs whose ``y^2`` vanishes to more than the generic order pass through a
special point and are dropped. A component whose generic order is odd has no
arc of this shape; it contributes no conditions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..algebra.field import ELEMENTS, ONE, FieldElement
from ..algebra.place import Place
from ..algebra.poly import Polynomial
from ..algebra.rational import as_rational
from ..algebra.series import LaurentSeries
from ..errors import FieldError
from ..model.points import SurfacePoint
from ..tate.fibers import POWER, SLOPE, Component

logger = logging.getLogger(__name__)

ARCS_PER_COMPONENT = 6

LocalCoefficients = Tuple[Polynomial, Polynomial, Polynomial]


@dataclass(frozen=True)
class Arc:
    place: Place
    label: str
    multiplicity: int
    c0: FieldElement
    x_local: LaurentSeries
    cubic: LaurentSeries
    sign: int = 1

    @property
    def t(self) -> LaurentSeries:
        if self.place.is_infinite:
            return LaurentSeries.monomial(-self.multiplicity, self.c0.inverse())
        return LaurentSeries(0, (self.place.root,)) + LaurentSeries.monomial(self.multiplicity, self.c0)

    @property
    def x(self) -> LaurentSeries:
        if self.place.is_infinite:
            return self.x_local * LaurentSeries.monomial(-4 * self.multiplicity, self.c0 ** -4)
        return self.x_local

    def y(self, terms: int) -> LaurentSeries:
        root = self.cubic.sqrt(terms)
        if root is None:
            raise FieldError(f"y^2 has no square root along the arc through {self.label} at t = {self.place}")
        if self.sign < 0:
            root = -root
        if self.place.is_infinite:
            return root * LaurentSeries.monomial(-6 * self.multiplicity, self.c0 ** -6)
        return root

    def evaluate(self, f, terms: int) -> LaurentSeries:
        """A rational function of ``t`` along the arc."""
        g = as_rational(f)
        t = self.t
        num = g.num(t) if g.num else LaurentSeries(0, ())
        if g.den.degree == 0:
            return num * g.den.coeff(0).inverse()
        return num.divide(g.den(t), terms)

    def slope(self, point: SurfacePoint, terms: int) -> LaurentSeries:
        """``(y + y_P) / (x - x_P)`` along the arc."""
        x_p, y_p = point.coordinates
        return (self.y(terms) + self.evaluate(y_p, terms)).divide(self.x - self.evaluate(x_p, terms), terms)


def _cubic(local: LocalCoefficients, s: LaurentSeries, x: LaurentSeries) -> LaurentSeries:
    a2, a4, a6 = (c(s) if c else LaurentSeries(0, ()) for c in local)
    return ((x + a2) * x + a4) * x + a6


def _branch_signs(comp: Component, c0: FieldElement, xi: FieldElement, cubic: LaurentSeries) -> List[int]:
    """Signs of ``y`` that put the arc on ``comp`` rather than on its partner."""
    if comp.branch is None:
        return [1, -1]
    branch = comp.branch
    if branch.value is None:
        return []
    half = cubic.start // 2
    root = cubic.leading.sqrt()
    if branch.kind == SLOPE:
        if half != comp.depth:
            return []
        ratio = root / xi
    elif branch.kind == POWER:
        if half != comp.multiplicity * branch.power:
            return []
        ratio = root / c0 ** branch.power
    else:
        return []
    return [sign for sign in (1, -1) if ratio * sign == branch.value]


def _separation(arc: Arc, avoid: SurfacePoint, terms: int) -> Optional[int]:
    diff = arc.x - arc.evaluate(avoid.x, terms)
    try:
        return diff.valuation()
    except FieldError:
        return None


def component_arcs(
    local: LocalCoefficients,
    place: Place,
    comp: Component,
    avoid: Optional[SurfacePoint] = None,
    limit: int = ARCS_PER_COMPONENT,
    terms: int = 24,
) -> List[Arc]:
    """
    Up to ``limit`` arcs through general points of ``comp``.

    With ``avoid`` the arcs keep away from the points where that section
    meets the fiber: only arcs on which ``x - x_P`` has its least order stay.
    """
    m, depth = comp.multiplicity, comp.depth
    xis = [xi for xi in ELEMENTS if xi or depth == 0]
    units = [ONE] + ([c for c in ELEMENTS if c and c != ONE] if m > 1 else [])
    generic = None
    arcs: List[Arc] = []
    for c0 in units:
        candidates = []
        for xi in xis:
            s = LaurentSeries.monomial(m, c0)
            x = comp.centre(s) if comp.centre else LaurentSeries(0, ())
            x = x + LaurentSeries.monomial(depth, xi)
            cubic = _cubic(local, s, x)
            if cubic.valuation() is not None:
                candidates.append((xi, x, cubic))
        if generic is None:
            if not candidates:
                return []
            generic = min(cubic.start for _, _, cubic in candidates)
            if generic % 2:
                logger.debug("t = %s %s: generic order %d of y^2 is odd; no arcs", place, comp.label, generic)
                return []
        for xi, x, cubic in candidates:
            if cubic.start != generic or not cubic.leading.is_square():
                continue
            for sign in _branch_signs(comp, c0, xi, cubic):
                arcs.append(Arc(place, comp.label, m, c0, x, cubic, sign))
        if len(arcs) >= 2 * limit:
            break
    if avoid is not None and not avoid.is_zero and arcs:
        orders = [_separation(arc, avoid, terms) for arc in arcs]
        finite = [v for v in orders if v is not None]
        if finite:
            least = min(finite)
            arcs = [arc for arc, v in zip(arcs, orders) if v == least]
    return arcs[:limit]
