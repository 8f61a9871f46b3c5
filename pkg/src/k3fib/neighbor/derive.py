"""
From an elliptic parameter to the Weierstrass model of the neighbor fibration.

Substituting ``x = (w / scale) d(T) - a(T)`` into the old equation gives
``y^2 = R(T)`` over F9(w). Square factors are stripped, the remaining
cubic or quartic is converted with a rational point, and the result is
minimized, put in normal form and classified.

A slope parameter ``(y + y_P)/(x - x_P)`` gives a quartic in the same way
through the line of that slope. A ``y``-parameter on ``y^2 = x^3 + a6`` gives
``Z^3 = Q(T)`` with ``Z = x``; after stripping cubes ``Q`` is a quadratic and
the neighbor is quasi-elliptic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..algebra.field import ELEMENTS, ONE, ZERO, FieldElement
from ..algebra.place import INFINITY
from ..algebra.poly import Polynomial, poly_gcd, squarefree_factorization
from ..algebra.rational import RationalFunction, as_rational
from ..errors import ModelError, NeighborError
from ..lattice.roots import RootSystem
from ..lattice.trivial import shioda_tate_mw_rank
from ..model.conversion import (
    CurveConversion,
    cubic_to_weierstrass,
    cuspidal_to_weierstrass,
    normal_form,
    quartic_to_weierstrass,
)
from ..model.maps import ModelMap, apply_map, model_at_infinity, models_isomorphic, substitute_base
from ..model.weierstrass import WeierstrassModel, validate_k3
from ..tate.algorithm import classify_all
from ..tate.fibers import FiberConfiguration
from ..tate.minimal import minimize
from .ansatz import (
    SLOPE_KIND,
    Y_KIND,
    EllipticParameter,
    ParameterAnsatz,
    PoleReport,
    build_ansatz,
    pole_order_check,
    solve_pole_conditions,
)
from .divisor import DivisorSpec
from .fiberpoly import W, FiberPoly, strip_cubes, strip_squares

logger = logging.getLogger(__name__)


def _slope_curve(m: WeierstrassModel, w: EllipticParameter) -> FiberPoly:
    """
    ``V^2 = (a2 - u^2)^2 - (a4 - a2 x_P) + u y_P`` for ``u = (y + y_P)/(x - x_P)``.

    The line ``y = u (x - x_P) - y_P`` meets the cubic at ``-P`` and at the
    roots of ``X^2 + (a2 - u^2) X + (a4 - a2 x_P - u y_P)``, ``X = x - x_P``;
    ``V`` is the square root of that discriminant.
    """
    if w.section is None or w.section.is_zero or not w.section.is_integral():
        raise NeighborError("the slope curve needs a section with polynomial coordinates")
    x_p, y_p = (c.as_polynomial() for c in w.section.coordinates)
    u = w.head_in_w()
    a2, a4, _ = m.coefficients
    lifted_a2 = FiberPoly.constant_in_w(a2)
    b = FiberPoly.constant_in_w(a4 - a2 * x_p)
    gap = lifted_a2 - u * u
    return gap * gap - b + u * FiberPoly.constant_in_w(y_p)


def _cuspidal_curve(m: WeierstrassModel, w: EllipticParameter) -> FiberPoly:
    """``Z^3 = y^2 - a6`` with ``y = (w / scale) d(T) - b(T)`` on ``y^2 = x^3 + a6``."""
    if w.section is not None:
        raise NeighborError("deriving a model from a 2O + P parameter is not supported")
    if w.x_coefficient:
        raise NeighborError(f"y-parameter with x-coefficient {w.x_coefficient} gives no cuspidal curve")
    if m.a2 or m.a4:
        raise NeighborError("3O parameters are derived on models y^2 = x^3 + a6 only")
    y = w.head_in_w()
    return y * y - FiberPoly.constant_in_w(m.a6)


def curve_in_w(m: WeierstrassModel, w: EllipticParameter) -> FiberPoly:
    """
    The curve over F9(w) cut out by ``w``, reduced.

    For ``x`` and slope parameters this is ``R(T)`` with ``V^2 = R(T)``,
    squares stripped. For a ``y``-parameter on a quasi-elliptic model it is
    ``Q(T)`` with ``Z^3 = Q(T)``, cubes stripped.
    """
    if w.kind == Y_KIND:
        q = strip_cubes(_cuspidal_curve(m, w))
        logger.debug("curve over F9(w): Z^3 = %s", q)
        return q
    if w.kind == SLOPE_KIND:
        r = _slope_curve(m, w)
    else:
        x = w.x_in_w()
        a2, a4, a6 = (FiberPoly.constant_in_w(c) for c in m.coefficients)
        r = x * x * x + a2 * x * x + a4 * x + a6
    q = strip_squares(r)
    logger.debug("curve over F9(w): V^2 = %s", q)
    return q


def _convert(q: FiberPoly, kind: str) -> CurveConversion:
    if kind != Y_KIND:
        return convert_curve(q)
    if q.degree < 2:
        raise NeighborError(f"Z^3 = {q} has genus 0; the parameter is not elliptic")
    if q.degree > 2:
        raise NeighborError(f"Z^3 = {q} has degree {q.degree} in T after removing cubes")
    return cuspidal_to_weierstrass(q.coeffs)


def reduce_scaling(m: WeierstrassModel) -> Tuple[WeierstrassModel, ModelMap]:
    """
    Divide out ``u`` with ``u^2 | a2``, ``u^4 | a4`` and ``u^6 | a6``.

    Works on the squarefree blocks of the common content, so it also
    reaches places that are not rational over F9.
    """
    g = Polynomial()
    for c in m.coefficients:
        g = poly_gcd(g, c)
    u = Polynomial.constant(1)
    if g.degree < 1:
        return m, ModelMap.identity()
    for f, mult in squarefree_factorization(g):
        e = mult // 2
        while e and not all(not c or not (c % f ** (k * e)) for k, c in zip((2, 4, 6), m.coefficients)):
            e -= 1
        u = u * f ** e
    if u.degree < 1:
        return m, ModelMap.identity()
    phi = ModelMap(u, 0)
    logger.debug("scaling out u = %s", u)
    return apply_map(m, phi), phi


def _linear_candidates() -> List[RationalFunction]:
    return [W * alpha + beta for alpha in ELEMENTS[1:] for beta in ELEMENTS]


def convert_curve(q: FiberPoly) -> CurveConversion:
    """
    Weierstrass form of ``V^2 = q(T)``.

    Points are tried in a fixed order: constant roots, constant ``T0``
    with a square value, the points at ``T = infinity``, roots ``alpha w + beta``.

    Raises:
        NeighborError: the degree is not 3 or 4, or no point was found.
    """
    cs = q.coeffs
    if q.degree == 3:
        return cubic_to_weierstrass(cs)
    if q.degree < 3:
        raise NeighborError(f"V^2 = {q} has genus 0; the parameter is not elliptic")
    if q.degree > 4:
        raise NeighborError(f"V^2 = {q} has degree {q.degree} in T after removing squares")
    attempts: List[Tuple[Optional[RationalFunction], Optional[RationalFunction]]] = []
    constants = [as_rational(alpha) for alpha in ELEMENTS]
    attempts += [(t0, as_rational(0)) for t0 in constants if not q(t0)]
    for t0 in constants:
        value = q(t0)
        root = value.sqrt() if value else None
        if root is not None:
            attempts.append((t0, root))
    attempts.append((None, None))
    attempts += [(t0, as_rational(0)) for t0 in _linear_candidates() if not q(t0)]
    for t0, v0 in attempts:
        try:
            conv = quartic_to_weierstrass(cs, None if t0 is None else (t0, v0))
        except ModelError as exc:
            logger.debug("point %s rejected: %s", "T = inf" if t0 is None else (str(t0), str(v0)), exc)
            continue
        logger.info("quartic converted at %s", "T = inf" if t0 is None else f"T = {t0}, V = {v0}")
        return conv
    raise NeighborError(f"no rational point found on V^2 = {q}")


@dataclass(frozen=True)
class Identification:
    """``apply_map(base-changed derived, map) == target``."""

    map: ModelMap
    alpha: FieldElement = ONE
    beta: FieldElement = ZERO
    inverted: bool = False

    @property
    def base_change(self) -> str:
        w = "1/w" if self.inverted else "w"
        if self.alpha == ONE and self.beta == ZERO:
            return w
        return f"{self.alpha}*{w} + {self.beta}"

    def __str__(self) -> str:
        return f"w -> {self.base_change}, {self.map}"


def identify_target(
    derived: WeierstrassModel, target: WeierstrassModel, allow_base_change: bool = True
) -> Optional[Identification]:
    """
    Find a model map, possibly after ``w -> alpha w + beta`` or
    ``w -> 1/w`` followed by one, taking ``derived`` to ``target``.
    """
    phi = models_isomorphic(derived, target)
    if phi is not None:
        return Identification(phi)
    if not allow_base_change:
        return None
    for inverted in (False, True):
        base = model_at_infinity(derived) if inverted else derived
        for alpha in ELEMENTS[1:]:
            for beta in ELEMENTS:
                candidate = substitute_base(base, alpha, beta)
                phi = models_isomorphic(candidate, target)
                if phi is not None:
                    return Identification(phi, alpha, beta, inverted)
    return None


@dataclass(frozen=True)
class NeighborResult:
    source: WeierstrassModel
    parameter: EllipticParameter
    curve: FiberPoly
    conversion: CurveConversion
    model: WeierstrassModel
    maps: Tuple[ModelMap, ...]
    config: FiberConfiguration
    divisor: Optional[DivisorSpec] = None
    ansatz: Optional[ParameterAnsatz] = None
    poles: Optional[PoleReport] = None
    source_config: Optional[FiberConfiguration] = None
    identification: Optional[Identification] = None
    target_config: Optional[FiberConfiguration] = None
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def predicted(self) -> Optional[str]:
        """Fiber of the new fibration at ``w = infinity``, read off the shape of ``F``."""
        return None if self.divisor is None else self.divisor.fiber_shape()

    @property
    def at_infinity(self) -> Optional[str]:
        fd = self.config.at(INFINITY)
        return None if fd is None else fd.lattice_label

    @property
    def prediction_ok(self) -> bool:
        return self.predicted is None or self.predicted == self.at_infinity

    @property
    def roots(self) -> RootSystem:
        return RootSystem.of(self.config.lattice_labels())

    @property
    def mw_rank(self) -> int:
        return shioda_tate_mw_rank(self.config)

    @property
    def target_mw_rank(self) -> Optional[int]:
        return None if self.target_config is None else shioda_tate_mw_rank(self.target_config)

    @property
    def rank_consistent(self) -> bool:
        """
        Both trivial lattices fit in rank 22, and the derived fibration has
        the Shioda-Tate rank of the target when one was given.
        """
        ok = self.config.trivial_rank <= 22
        if self.source_config is not None:
            ok = ok and self.source_config.trivial_rank <= 22
        if self.target_config is not None:
            ok = ok and self.mw_rank == self.target_mw_rank
        return ok

    @property
    def ok(self) -> bool:
        poles_ok = self.poles is None or self.poles.ok
        return poles_ok and self.prediction_ok and self.rank_consistent

    def report_lines(self) -> List[str]:
        lines = []
        if self.ansatz is not None:
            lines.append(f"ansatz: {self.ansatz.describe()}")
        lines.append(f"w = {self.parameter}")
        lhs = "Z^3" if self.parameter.kind == Y_KIND else "V^2"
        lines.append(f"curve: {lhs} = {self.curve}")
        lines.append(f"conversion: {self.conversion.kind}")
        lines.append(f"model: {self.model.equation()}")
        lines.extend(self.config.report_lines())
        lines.append(f"roots: {self.roots}  mw_rank: {self.mw_rank}")
        if self.target_config is not None and self.mw_rank != self.target_mw_rank:
            lines.append(f"target mw_rank: {self.target_mw_rank} (MISMATCH)")
        if self.predicted is not None:
            verdict = "ok" if self.prediction_ok else "MISMATCH"
            lines.append(f"predicted at infinity: {self.predicted}, computed: {self.at_infinity or '-'} ({verdict})")
        if self.poles is not None:
            lines.append("poles: " + ("ok" if self.poles.ok else "; ".join(map(str, self.poles.failures()))))
        if self.identification is not None:
            lines.append(f"target: {self.identification}")
        lines.extend(self.notes)
        return lines

    def to_dict(self) -> Dict[str, object]:
        return {
            "parameter": str(self.parameter),
            "ansatz": None if self.ansatz is None else self.ansatz.describe(),
            "curve": str(self.curve),
            "conversion": self.conversion.kind,
            "model": self.model.to_text(),
            "fibers": self.config.to_dict(),
            "roots": str(self.roots),
            "mw_rank": self.mw_rank,
            "predicted": self.predicted,
            "at_infinity": self.at_infinity,
            "poles": None if self.poles is None else self.poles.to_dict(),
            "target": None if self.identification is None else str(self.identification),
            "ok": self.ok,
        }


def derive_new_model(
    m: WeierstrassModel,
    w: EllipticParameter,
    F: Optional[DivisorSpec] = None,
    config: Optional[FiberConfiguration] = None,
) -> NeighborResult:
    """
    The neighbor fibration cut out by ``w``.

    Raises:
        NeighborError: the curve over F9(w) is not cubic or quartic, or no
            rational point is found.
        ModelError: the converted model is not a K3 model after minimization.
    """
    q = curve_in_w(m, w)
    conv = _convert(q, w.kind)
    model, phi_scale = reduce_scaling(conv.model)
    model, phi_min = minimize(model)
    model, phi_nf = normal_form(model)
    verdict = validate_k3(model)
    if not verdict.ok:
        raise ModelError(f"derived model {model} is not a K3 model: {verdict}")
    new_config = classify_all(model)
    poles = None
    if F is not None:
        config = config or classify_all(m)
        poles = pole_order_check(m, F, w, config)
    logger.info("derived %s with fibers %s", model.equation(), " ".join(new_config.lattice_labels()))
    return NeighborResult(
        source=m,
        parameter=w,
        curve=q,
        conversion=conv,
        model=model,
        maps=(phi_scale, phi_min, phi_nf),
        config=new_config,
        divisor=F,
        poles=poles,
        source_config=config,
    )


def neighbor_step(
    m: WeierstrassModel,
    F: DivisorSpec,
    target: Optional[WeierstrassModel] = None,
    allow_base_change: bool = True,
) -> NeighborResult:
    """Build the ansatz for ``F``, solve it, derive the model and compare with ``target``."""
    config = classify_all(m)
    ansatz = build_ansatz(m, F, config)
    w = solve_pole_conditions(m, ansatz, F, config)
    result = derive_new_model(m, w, F, config)
    ident = None
    target_config = None
    notes: List[str] = []
    if target is not None:
        target_config = classify_all(target)
        ident = identify_target(result.model, target, allow_base_change)
        if ident is None:
            target_roots = RootSystem.of(target_config.lattice_labels())
            notes.append(f"target not identified; target roots {target_roots}, derived {result.roots}")
            logger.warning(notes[-1])
    return NeighborResult(
        source=result.source,
        parameter=result.parameter,
        curve=result.curve,
        conversion=result.conversion,
        model=result.model,
        maps=result.maps,
        config=result.config,
        divisor=F,
        ansatz=ansatz,
        poles=result.poles,
        source_config=config,
        identification=ident,
        target_config=target_config,
        notes=tuple(notes),
    )
