"""
Tate's algorithm for ``y^2 = x^3 + a2 x^2 + a4 x + a6`` in residue characteristic 3.

Only translations ``x -> x + r`` are ever needed: with ``a1 = a3 = 0`` the
quadratics in ``y`` of steps 7 to 9 have the form ``Y^2 - c`` and their
double roots sit at ``Y = 0`` already. The run works on exact local
polynomials in the uniformizer ``s`` and records a component frame for every
fiber type as it goes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..algebra.field import F9, FieldElement
from ..algebra.place import INFINITY, Place, rational_places
from ..algebra.poly import ZERO_POLY, Polynomial, field_roots, is_squarefree, poly_gcd
from ..errors import ClassificationError, UnsupportedPlaceError
from ..model.maps import model_at_infinity
from ..model.weierstrass import WeierstrassModel, discriminant, validate_k3
from .fibers import (
    E6_INTERNAL,
    E7_INTERNAL,
    E8_INTERNAL,
    POWER,
    SLOPE,
    Branch,
    Component,
    FiberConfiguration,
    FiberData,
    arm_branches,
)
from .kodaira import I0, KodairaType

logger = logging.getLogger(__name__)

_INF = 10 ** 6


def _v(p: Polynomial) -> int:
    return p.order() if p else _INF


def _neg(value: Optional[FieldElement]) -> Optional[FieldElement]:
    return None if value is None else -value


IDENTITY = Component("id", 1, 0, ZERO_POLY)


class _LocalModel:
    """Local coefficients in ``s`` and the translation applied so far."""

    def __init__(self, a2: Polynomial, a4: Polynomial, a6: Polynomial):
        self.a2, self.a4, self.a6 = a2, a4, a6
        self.shift = ZERO_POLY

    def translate(self, r: Polynomial) -> None:
        a2, a4, a6 = self.a2, self.a4, self.a6
        self.a6 = ((r + a2) * r + a4) * r + a6
        self.a4 = a2 * r * 2 + a4
        self.shift = self.shift + r


@dataclass(frozen=True)
class TateRun:
    """Outcome of one run; ``kodaira`` is ``None`` when the model is not minimal."""

    kodaira: Optional[KodairaType]
    components: Tuple[Component, ...]
    shift: Polynomial

    @property
    def minimal(self) -> bool:
        return self.kodaira is not None


def local_coefficients(m: WeierstrassModel, place: Place, weight: int = 2) -> Tuple[Polynomial, Polynomial, Polynomial]:
    """``(a2, a4, a6)`` as polynomials in the local parameter at ``place``."""
    if place.is_infinite:
        return model_at_infinity(m, weight).coefficients
    place.require_rational()
    alpha = place.root
    a2, a4, a6 = m.coefficients
    return a2.shift(alpha), a4.shift(alpha), a6.shift(alpha)


def _e_type(kodaira: KodairaType, internal, simple: List[Component], shift: Polynomial) -> TateRun:
    arms = arm_branches(simple) if internal is E6_INTERNAL else {}
    comps = [IDENTITY] + [Component(label, mult, depth, shift, arms.get(label)) for label, mult, depth in internal] + simple
    return TateRun(kodaira, tuple(comps), shift)


def _multiplicative(loc: _LocalModel, n: int) -> TateRun:
    lead = loc.a2.coeff(0)
    sigma = lead.sqrt()
    for j in range(1, (n + 1) // 2):
        b, c = loc.a4.coeff(j), loc.a6.coeff(2 * j)
        if b * b - lead * c:
            raise ClassificationError(f"I{n}: no double root at level {j}")
        loc.translate(Polynomial.monomial(j, b / lead))
    comps = [IDENTITY]
    for k in range(1, n):
        branch = None
        if 2 * k < n:
            branch = Branch(SLOPE, sigma)
        elif 2 * k > n:
            branch = Branch(SLOPE, _neg(sigma))
        comps.append(Component(f"a{k}", 1, min(k, n - k), loc.shift, branch))
    logger.debug("multiplicative I%d, split=%s", n, sigma is not None)
    return TateRun(KodairaType("I", n), tuple(comps), loc.shift)


def _star(loc: _LocalModel, r0: Polynomial, beta: FieldElement, gamma: FieldElement, v_delta: int) -> TateRun:
    loc.translate(Polynomial.monomial(1, beta))
    near = Component("near", 1, 2, r0 + Polynomial.monomial(1, gamma))
    n = 0
    while True:
        n += 1
        if n + 6 > v_delta:
            raise ClassificationError(f"I*_n sub-loop ran past v(Delta) = {v_delta}")
        if n % 2:
            if loc.a6.coeff(n + 3):
                break
            continue
        a, b, c = loc.a2.coeff(1), loc.a4.coeff(n // 2 + 2), loc.a6.coeff(n + 3)
        if b * b - a * c:
            break
        loc.translate(Polynomial.monomial(n // 2 + 1, b / a))
    comps = [IDENTITY, near] + [Component(f"c{j}", 2, j + 2, loc.shift) for j in range(n + 1)]
    if n % 2:
        k = (n + 3) // 2
        root = loc.a6.coeff(n + 3).sqrt()
        comps.append(Component("far1", 1, k, loc.shift, Branch(POWER, root, k)))
        comps.append(Component("far2", 1, k, loc.shift, Branch(POWER, _neg(root), k)))
    else:
        k = n // 2 + 1
        quad = Polynomial((loc.a6.coeff(n + 3), loc.a4.coeff(n // 2 + 2), loc.a2.coeff(1)))
        for idx, rho in enumerate(field_roots(quad), start=1):
            comps.append(Component(f"far{idx}", 1, k + 1, loc.shift + Polynomial.monomial(k, rho)))
    return TateRun(KodairaType("I*", n), tuple(comps), loc.shift)


def run_tate(a2: Polynomial, a4: Polynomial, a6: Polynomial, v_delta: int) -> TateRun:
    """Classify the fiber at ``s = 0`` of the local model ``(a2, a4, a6)``."""
    loc = _LocalModel(a2, a4, a6)
    if v_delta == 0:
        return TateRun(I0, (IDENTITY,), ZERO_POLY)
    b0, c0, d0 = loc.a2.coeff(0), loc.a4.coeff(0), loc.a6.coeff(0)
    if b0:
        x0 = c0 / b0
    elif c0:
        raise ClassificationError("reduced fiber is smooth although v(Delta) > 0")
    else:
        x0 = -d0.cube_root()
    loc.translate(Polynomial.constant(x0))
    r0 = loc.shift
    if v_delta == 1:
        return TateRun(KodairaType("I", 1), (IDENTITY,), r0)
    if loc.a2.coeff(0):
        return _multiplicative(loc, v_delta)
    if _v(loc.a6) < 2:
        return TateRun(KodairaType("II"), (IDENTITY,), r0)
    if _v(loc.a2 * loc.a6 - loc.a4 * loc.a4) < 3:
        return TateRun(KodairaType("III"), (IDENTITY, Component("a1", 1, 1, r0)), r0)
    if _v(loc.a6) < 3:
        root = loc.a6.coeff(2).sqrt()
        comps = (
            IDENTITY,
            Component("a1", 1, 1, r0, Branch(POWER, root, 1)),
            Component("a2", 1, 1, r0, Branch(POWER, _neg(root), 1)),
        )
        return TateRun(KodairaType("IV"), comps, r0)
    cubic = Polynomial((loc.a6.coeff(3), loc.a4.coeff(2), loc.a2.coeff(1), 1))
    deriv = cubic.derivative()
    if deriv:
        g = poly_gcd(cubic, deriv)
        if g.degree == 0:
            comps = [IDENTITY, Component("c0", 2, 2, r0)]
            labels = ("near", "far1", "far2")
            for label, rho in zip(labels, field_roots(cubic)):
                comps.append(Component(label, 1, 2, r0 + Polynomial.monomial(1, rho)))
            return TateRun(KodairaType("I*", 0), tuple(comps), r0)
        beta = -g.coeff(0)
        gamma = beta - loc.a2.coeff(1)
        logger.debug("step 7: double root %s, simple root %s", beta, gamma)
        return _star(loc, r0, beta, gamma, v_delta)
    # triple root
    loc.translate(Polynomial.monomial(1, -loc.a6.coeff(3).cube_root()))
    shift = loc.shift
    if loc.a6.coeff(4):
        root = loc.a6.coeff(4).sqrt()
        simple = [
            Component("e1", 1, 2, shift, Branch(POWER, root, 2)),
            Component("e2", 1, 2, shift, Branch(POWER, _neg(root), 2)),
        ]
        return _e_type(KodairaType("IV*"), E6_INTERNAL, simple, shift)
    if loc.a4.coeff(3):
        rho = -loc.a6.coeff(5) / loc.a4.coeff(3)
        simple = [Component("e1", 1, 3, shift + Polynomial.monomial(2, rho))]
        return _e_type(KodairaType("III*"), E7_INTERNAL, simple, shift)
    if loc.a6.coeff(5):
        return _e_type(KodairaType("II*"), E8_INTERNAL, [], shift)
    logger.debug("step 11: model is not minimal, shift %s", shift)
    return TateRun(None, (), shift)


def classify_place(m: WeierstrassModel, place: Place) -> FiberData:
    """Kodaira type and component frame of the fiber of ``m`` at ``place``."""
    if m.is_quasi_elliptic():
        from .quasi import classify_quasi_place

        return classify_quasi_place(m, place)
    a2, a4, a6 = local_coefficients(m, place)
    delta = discriminant(WeierstrassModel(a2, a4, a6, field=m.field))
    v_delta = _v(delta)
    run = run_tate(a2, a4, a6, v_delta)
    if not run.minimal:
        raise ClassificationError(f"model is not minimal at {place}")
    euler = run.kodaira.discriminant_order
    if v_delta < euler or (v_delta > euler and not run.kodaira.can_be_wild):
        raise ClassificationError(f"{run.kodaira} at {place} has Euler number {euler} but v(Delta) = {v_delta}")
    if v_delta > euler:
        logger.debug("fiber at %s: %s with wild part %d", place, run.kodaira, v_delta - euler)
    logger.debug("fiber at %s: %s (v_delta=%d)", place, run.kodaira, v_delta)
    return FiberData(place, run.kodaira, v_delta, run.components, run.shift)


def _split_discriminant(m: WeierstrassModel) -> Tuple[List[Place], Polynomial]:
    delta = m.discriminant()
    places, rest = rational_places(delta, F9)
    if rest.degree > 0 and not is_squarefree(rest):
        raise UnsupportedPlaceError(f"discriminant factor {rest.monic()} has no roots in F9")
    out = [p for p, _ in places]
    if 24 - delta.degree > 0:
        out.append(INFINITY)
    return out, rest.monic() if rest.degree > 0 else Polynomial.constant(1)


def singular_places(m: WeierstrassModel) -> List[Place]:
    """
    Rational places with a singular fiber, finite ones in table order, then infinity.

    A squarefree factor of the discriminant without roots in F9 only carries
    I1 fibers and is skipped; any other such factor is an error.
    """
    return _split_discriminant(m)[0]


def classify_all(m: WeierstrassModel) -> FiberConfiguration:
    """Every singular fiber of a K3 model, ordered by place."""
    verdict = validate_k3(m)
    if not verdict.ok:
        raise ClassificationError(f"cannot classify: {verdict}")
    if m.is_quasi_elliptic():
        from .quasi import classify_quasi

        return classify_quasi(m)
    places, unsplit = _split_discriminant(m)
    fibers = tuple(classify_place(m, place) for place in places)
    config = FiberConfiguration(fibers, False, unsplit)
    if config.v_delta_sum != 24:
        raise ClassificationError(f"sum of v(Delta) is {config.v_delta_sum}, expected 24")
    if config.trivial_rank > 22:
        raise ClassificationError(f"trivial lattice rank {config.trivial_rank} exceeds 22")
    return config
