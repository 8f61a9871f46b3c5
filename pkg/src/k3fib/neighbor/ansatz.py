"""
Elliptic parameters with a prescribed divisor of poles.

For a divisor ``F`` of fiber shape the candidate parameters are ratios of
global sections of ``O(F)``. With ``d(t)`` collecting the identity
components of ``F`` at finite places and ``N = deg d + mult(id at infinity)``
the three shapes are

* ``2O``: ``w = (a(t) + x) / d(t)``, ``deg a <= N``;
* ``O + P``: ``w = (a(t) + (y + y_P)/(x - x_P)) / d(t)``;
* ``3O`` or ``2O + P``: ``w = (y + c(t) x + b(t)) / d(t)``.

The coefficient of ``t^deg d`` in ``a`` (or ``b``) is dropped, which removes
the constants from the solution space.

Along a fiber component ``C`` the order of ``x + a`` follows the component
frame recorded by classification, so requiring ``ord_C(w) >= -mult_F(C)``
turns into vanishing conditions on the low coefficients of ``a`` expanded
at the place. Those conditions are linear.

The slope and ``y`` ansätze involve ``y``, whose order along a component is
not read off the frame. Their conditions come from expanding the numerator
along arcs through general points of each component (:mod:`.arcs`); the
coefficients below the required order are again linear in the unknowns.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..algebra.field import F9, ONE, ZERO, Field, FieldElement, coerce
from ..algebra.parse import parse_polynomial
from ..algebra.place import INFINITY, Place, valuation
from ..algebra.poly import ZERO_POLY, Polynomial
from ..algebra.series import LaurentSeries
from ..errors import ClassificationError, FieldError, NeighborError, ParseError
from ..model.points import SurfacePoint
from ..model.weierstrass import WeierstrassModel
from ..tate.algorithm import classify_all, local_coefficients
from ..tate.fibers import Component, FiberConfiguration
from .arcs import Arc, component_arcs
from .divisor import DivisorSpec
from .fiberpoly import W, FiberPoly
from .linear import solve_unique

logger = logging.getLogger(__name__)

X_KIND = "x"
SLOPE_KIND = "slope"
Y_KIND = "y"

#: pole order along O of the structural term of each ansatz
_ZERO_POLE = {X_KIND: 2, SLOPE_KIND: 1, Y_KIND: 3}
#: weight of the structural term at infinity
_WEIGHT = {X_KIND: 4, SLOPE_KIND: 2, Y_KIND: 6}

_SMOOTH_FRAME = (Component("id", 1, 0, ZERO_POLY),)

#: relative precision of the first expansion along an arc, and how often it is raised
_TERMS = 16
_ATTEMPTS = 4


def _wrap(value) -> str:
    text = str(value)
    return f"({text})" if " " in text else text


def _slope_text(point: SurfacePoint) -> str:
    x_p, y_p = point.coordinates
    num = f"y + {_wrap(y_p)}" if y_p else "y"
    den = f"x - {_wrap(x_p)}" if x_p else "x"
    return f"({num})/({den})"


def _weight(kind: str, section: Optional[SurfacePoint]) -> int:
    if kind == Y_KIND and section is not None:
        return _WEIGHT[X_KIND]
    return _WEIGHT[kind]


@dataclass(frozen=True)
class ParameterAnsatz:
    kind: str
    arity: int
    denominator: Polynomial
    top_degree: int
    unknowns: Tuple[str, ...]
    section: Optional[SurfacePoint] = None

    @property
    def head(self) -> str:
        if self.kind == X_KIND:
            return "x"
        if self.section is not None:
            return _slope_text(self.section)
        return "y"

    @property
    def structural(self) -> str:
        if self.kind == Y_KIND:
            return f"{self.head} + c(t)*x"
        return self.head

    def describe(self) -> str:
        """The ansatz with its unknowns written out, e.g. ``w = (a0 + a1*t + x)/(t^2)``."""
        terms = []
        for name in self.unknowns:
            power = int(name[1:])
            if name[0] == "c":
                terms.append(f"{name}*t^{power}*x" if power > 1 else f"{name}*t*x" if power else f"{name}*x")
            else:
                terms.append(f"{name}*t^{power}" if power > 1 else f"{name}*t" if power else name)
        return f"w = ({' + '.join(terms + [self.head])})/({self.denominator})"

    def indices(self, prefix: str = "a") -> List[int]:
        return [int(name[1:]) for name in self.unknowns if name[0] == prefix]


@dataclass(frozen=True)
class EllipticParameter:
    """
    ``w = scale * (head + x_coefficient * x + numerator) / denominator``.

    The head is ``x`` for the ``x`` kind and the slope ``(y + y_P)/(x - x_P)``
    through ``section`` for the slope kind. For the ``y`` kind it is ``y``,
    or that slope when the divisor carries a section.
    """

    numerator: Polynomial
    denominator: Polynomial
    scale: FieldElement = ONE
    kind: str = X_KIND
    x_coefficient: Polynomial = ZERO_POLY
    section: Optional[SurfacePoint] = None

    @classmethod
    def parse(cls, text: str, field: Field = F9) -> "EllipticParameter":
        """Read ``a ; d`` as ``w = (x + a) / d``."""
        num, sep, den = text.partition(";")
        if not sep:
            raise ParseError(f"expected 'numerator ; denominator', got {text!r}")
        d = parse_polynomial(den, field)
        if not d:
            raise ParseError(f"zero denominator in {text!r}")
        return cls(parse_polynomial(num, field), d)

    def rescaled(self, c) -> "EllipticParameter":
        return replace(self, scale=self.scale * coerce(c))

    @property
    def head(self) -> str:
        if self.kind == X_KIND:
            return "x"
        if self.section is not None:
            return _slope_text(self.section)
        return "y"

    @property
    def pole_at_zero(self) -> int:
        """Pole order of ``w`` along the zero section."""
        if self.kind == Y_KIND and self.section is not None:
            return _ZERO_POLE[X_KIND]
        return _ZERO_POLE[self.kind]

    def head_in_w(self) -> FiberPoly:
        """``head + x_coefficient * x = (w / scale) * d(T) - numerator(T)`` over F9(w)."""
        w = W * self.scale.inverse()
        top = max(self.numerator.degree, self.denominator.degree, 0)
        return FiberPoly(w * self.denominator.coeff(k) - self.numerator.coeff(k) for k in range(top + 1))

    def x_in_w(self) -> FiberPoly:
        """``x = (w / scale) * d(T) - a(T)`` as a polynomial in ``T`` over F9(w)."""
        if self.kind != X_KIND:
            raise NeighborError(f"x is not solved from a {self.kind}-parameter")
        return self.head_in_w()

    def __str__(self) -> str:
        parts = [self.head]
        if self.x_coefficient:
            parts.append("x" if self.x_coefficient == 1 else f"{_wrap(self.x_coefficient)}*x")
        if self.numerator:
            parts.append(str(self.numerator))
        top = " + ".join(parts)
        text = top if self.denominator == 1 else f"({top})/({self.denominator})"
        return text if self.scale == ONE else f"{self.scale}*({text})"


def frame(config: FiberConfiguration, place: Place) -> Tuple[Component, ...]:
    fd = config.at(place)
    return _SMOOTH_FRAME if fd is None else fd.components


def validate_divisor(F: DivisorSpec, config: FiberConfiguration) -> None:
    """
    Check the labels against the classification and the shape of ``F``.

    Raises:
        NeighborError: unknown component, a whole fiber inside ``F``, or a
            multiplicity pattern that is not a fiber.
    """
    for term in F.components():
        term.place.require_rational()
        labels = {c.label for c in frame(config, term.place)}
        if term.label not in labels:
            raise NeighborError(
                f"no component {term.label!r} at t = {term.place}; known: {', '.join(sorted(labels))}"
            )
    for place in F.places():
        fd = config.at(place)
        count = 1 if fd is None else fd.component_count
        used = {t.label for t in F.components() if t.place == place}
        if len(used) >= count:
            raise NeighborError(f"F contains the whole fiber at t = {place}")
    if F.fiber_shape() is None:
        raise NeighborError(f"multiplicities of F = {F} do not form a fiber")


def _kind(F: DivisorSpec) -> str:
    zero, sections = F.zero_multiplicity, F.sections
    if len(sections) > 1 or any(t.multiplicity != 1 for t in sections):
        raise NeighborError("F may contain at most one section besides O, with multiplicity 1")
    if F.arity == 2:
        if zero == 2 and not sections:
            return X_KIND
        if zero == 1 and sections:
            return SLOPE_KIND
    else:
        if zero == 3 and not sections:
            return Y_KIND
        if zero == 2 and sections:
            return Y_KIND
    raise NeighborError(f"arity {F.arity} does not match {zero} O" + (" + P" if sections else ""))


def build_ansatz(
    m: WeierstrassModel, F: DivisorSpec, config: Optional[FiberConfiguration] = None
) -> ParameterAnsatz:
    config = config or classify_all(m)
    validate_divisor(F, config)
    kind = _kind(F)
    d = Polynomial.constant(1)
    for place in F.places():
        if place.is_infinite:
            continue
        k = F.multiplicity(place, "id")
        if k:
            d = d * Polynomial((-place.root, 1)) ** k
    section = F.sections[0].point if F.sections else None
    top = d.degree + F.multiplicity(INFINITY, "id")
    weight = _weight(kind, section)
    if top < weight:
        raise NeighborError(f"{kind}-ansatz needs deg d + mult(id at infinity) >= {weight}, got {top}")
    names = [f"a{j}" for j in range(top + 1) if j != d.degree]
    if kind == Y_KIND:
        names = [f"c{j}" for j in range(top - 4 + 1)] + [f"b{j}" for j in range(top + 1) if j != d.degree]
    ansatz = ParameterAnsatz(kind, F.arity, d, top, tuple(names), section)
    logger.info("ansatz for %s: %s", F, ansatz.describe())
    return ansatz


def _required_order(comp: Component, needed: int, place: Place) -> Optional[int]:
    """
    Least ``k`` with ``min(mult * k, depth) >= needed``.

    At a finite place ``a`` is regular, so non-positive requirements are
    vacuous. At infinity ``a`` may have a pole and ``k`` can be negative.
    """
    if not place.is_infinite:
        return comp.required_order(needed)
    if needed > comp.depth:
        return None
    return -(-needed // comp.multiplicity)


def _local_row(indices: Sequence[int], place: Place, i: int) -> List[FieldElement]:
    """Coefficient of ``s^i`` in ``a`` expanded at ``place``, as a row over the unknowns."""
    if place.is_infinite:
        return [ONE if j == 4 - i else ZERO for j in indices]
    alpha = place.root
    row = []
    for j in indices:
        row.append(coerce(comb(j, i) % 3) * alpha ** (j - i) if j >= i else ZERO)
    return row


def pole_conditions(
    ansatz: ParameterAnsatz, F: DivisorSpec, config: FiberConfiguration
) -> Tuple[List[List[FieldElement]], List[FieldElement]]:
    """Linear conditions on the unknowns of an ``x``-ansatz."""
    d = ansatz.denominator
    indices = ansatz.indices()
    rows: List[List[FieldElement]] = []
    rhs: List[FieldElement] = []
    places = sorted(set(F.places()) | {INFINITY})
    for place in places:
        v_d = 4 - d.degree if place.is_infinite else (valuation(d, place) if d.degree > 0 else 0)
        for comp in frame(config, place):
            mult = F.multiplicity(place, comp.label)
            needed = comp.multiplicity * v_d - mult
            k = _required_order(comp, needed, place)
            if k is None:
                raise NeighborError(
                    f"component {comp.label} at t = {place} needs order {needed} > depth {comp.depth}",
                    len(rows),
                    len(indices),
                )
            low = 4 - ansatz.top_degree if place.is_infinite else 0
            for i in range(low, k):
                rows.append(_local_row(indices, place, i))
                rhs.append(-comp.centre.coeff(i) if i >= 0 else ZERO)
            if k:
                logger.debug("t = %s %s: order %d on a + centre", place, comp.label, k)
    return rows, rhs


def _order_of_d(d: Polynomial, place: Place) -> int:
    if place.is_infinite:
        return -d.degree
    return valuation(d, place) if d.degree > 0 else 0


def _head_along(kind: str, section: Optional[SurfacePoint], arc: Arc, terms: int) -> LaurentSeries:
    if kind == Y_KIND and section is None:
        return arc.y(terms)
    return arc.slope(section, terms)


def _basis_along(ansatz: ParameterAnsatz, arc: Arc) -> List[LaurentSeries]:
    """``t^j`` for ``a_j`` and ``b_j``, ``t^j x`` for ``c_j``; all exact."""
    t, x = arc.t, arc.x
    out = []
    for name in ansatz.unknowns:
        power = t ** int(name[1:])
        out.append(power * x if name[0] == "c" else power)
    return out


def _expanded(build: Callable[[int], LaurentSeries], needed: int) -> LaurentSeries:
    """``build(terms)`` with ``terms`` raised until the series is known below ``needed``."""
    terms = _TERMS
    for _ in range(_ATTEMPTS):
        series = build(terms)
        if series.precision is None or series.precision >= needed:
            return series
        terms += needed - series.precision + _TERMS
    raise NeighborError(f"expansion along an arc did not reach order {needed}")


def _arc_places(F: DivisorSpec, config: FiberConfiguration) -> List[Place]:
    return sorted({fd.place for fd in config} | set(F.places()) | {INFINITY})


def arc_conditions(
    m: WeierstrassModel, ansatz: ParameterAnsatz, F: DivisorSpec, config: FiberConfiguration
) -> Tuple[List[List[FieldElement]], List[FieldElement]]:
    """
    Linear conditions on the unknowns of a slope or ``y``-ansatz.

    Along each arc through a component ``C`` at a place where ``d`` has
    order ``e``, the numerator must vanish to order ``mult(C) * e - mult_F(C)``;
    every coefficient below that order gives one row.
    """
    d = ansatz.denominator
    rows: List[List[FieldElement]] = []
    rhs: List[FieldElement] = []
    for place in _arc_places(F, config):
        local = local_coefficients(m, place)
        e = _order_of_d(d, place)
        for comp in frame(config, place):
            needed = comp.multiplicity * e - F.multiplicity(place, comp.label)
            before = len(rows)
            for arc in component_arcs(local, place, comp, avoid=ansatz.section):
                basis = _basis_along(ansatz, arc)
                head = _expanded(lambda n: _head_along(ansatz.kind, ansatz.section, arc, n), needed)
                low = min([s.start for s in basis + [head] if s.coeffs] + [needed])
                for i in range(low, needed):
                    rows.append([b.coeff(i) for b in basis])
                    rhs.append(-head.coeff(i))
            if len(rows) > before:
                logger.debug("t = %s %s: %d rows for order %d", place, comp.label, len(rows) - before, needed)
    return rows, rhs


def _assemble(ansatz: ParameterAnsatz, values: Sequence[FieldElement]) -> EllipticParameter:
    numerator = [ZERO] * (ansatz.top_degree + 1)
    x_coefficient = [ZERO] * (ansatz.top_degree + 1)
    for name, value in zip(ansatz.unknowns, values):
        target = x_coefficient if name[0] == "c" else numerator
        target[int(name[1:])] = value
    return EllipticParameter(
        Polynomial(numerator),
        ansatz.denominator,
        kind=ansatz.kind,
        x_coefficient=Polynomial(x_coefficient),
        section=ansatz.section,
    )


def solve_pole_conditions(
    m: WeierstrassModel,
    ansatz: ParameterAnsatz,
    F: DivisorSpec,
    config: Optional[FiberConfiguration] = None,
) -> EllipticParameter:
    """
    The unique normalized parameter with poles bounded by ``F``.

    Raises:
        NeighborError: a component cannot reach the required order, or the
            system has no or many solutions.
    """
    config = config or classify_all(m)
    if ansatz.kind == X_KIND:
        rows, rhs = pole_conditions(ansatz, F, config)
    else:
        rows, rhs = arc_conditions(m, ansatz, F, config)
    values = solve_unique(rows, rhs, len(ansatz.unknowns))
    w = _assemble(ansatz, values)
    logger.info("solved %d conditions in %d unknowns: w = %s", len(rows), len(ansatz.unknowns), w)
    return w


@dataclass(frozen=True)
class PoleEntry:
    place: Optional[Place]
    label: str
    expected: int
    pole: int

    @property
    def ok(self) -> bool:
        return self.expected == self.pole

    def __str__(self) -> str:
        where = "O" if self.place is None else f"t = {self.place} {self.label}"
        return f"{where}: pole {self.pole}, F has {self.expected}"


@dataclass(frozen=True)
class PoleReport:
    entries: Tuple[PoleEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def failures(self) -> List[PoleEntry]:
        return [e for e in self.entries if not e.ok]

    def to_dict(self) -> Dict[str, object]:
        return {"ok": self.ok, "failures": [str(e) for e in self.failures()]}


def _order_along(comp: Component, w: EllipticParameter, place: Place) -> int:
    a, d = w.numerator, w.denominator
    m, depth = comp.multiplicity, comp.depth
    if place.is_infinite:
        if a.degree > 4:
            inner = m * (4 - a.degree)
        else:
            local = a.reverse(4) + comp.centre if a else comp.centre
            inner = depth if not local else min(m * local.order(), depth)
        return m * (d.degree - 4) + inner
    local = a.shift(place.root) + comp.centre
    inner = depth if not local else min(m * local.order(), depth)
    v_d = valuation(d, place) if d.degree > 0 else 0
    return -m * v_d + inner


def _numerator_order(w: EllipticParameter, arc: Arc) -> Optional[int]:
    terms = _TERMS
    for _ in range(_ATTEMPTS):
        n = _head_along(w.kind, w.section, arc, terms)
        n = n + arc.evaluate(w.x_coefficient, terms) * arc.x + arc.evaluate(w.numerator, terms)
        try:
            return n.valuation()
        except FieldError:
            terms *= 2
    raise NeighborError(f"order of the parameter along {arc.label} at t = {arc.place} not reached")


def _order_by_arcs(local, comp: Component, w: EllipticParameter, place: Place) -> Optional[int]:
    """Order of ``w`` along ``comp``: least order of its numerator over the arcs, minus that of ``d``."""
    orders = []
    for arc in component_arcs(local, place, comp, avoid=w.section):
        v = _numerator_order(w, arc)
        if v is not None:
            orders.append(v)
    if not orders:
        return None
    return min(orders) - comp.multiplicity * _order_of_d(w.denominator, place)


def pole_order_check(
    m: WeierstrassModel,
    F: DivisorSpec,
    w: EllipticParameter,
    config: Optional[FiberConfiguration] = None,
) -> PoleReport:
    """
    Pole order of ``w`` along every component of every fiber touched by ``F``
    or singular, compared with its multiplicity in ``F``.
    """
    config = config or classify_all(m)
    entries = [PoleEntry(None, "O", F.zero_multiplicity, w.pole_at_zero)]
    for place in _arc_places(F, config):
        local = None if w.kind == X_KIND else local_coefficients(m, place)
        for comp in frame(config, place):
            try:
                if local is None:
                    order = _order_along(comp, w, place)
                else:
                    order = _order_by_arcs(local, comp, w, place)
            except ClassificationError:
                continue
            if order is None:
                continue
            entries.append(PoleEntry(place, comp.label, F.multiplicity(place, comp.label), max(0, -order)))
    report = PoleReport(tuple(entries))
    for e in report.failures():
        logger.warning("pole mismatch: %s", e)
    return report
