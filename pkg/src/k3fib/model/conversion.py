"""
Conversions of ``V^2 = Q(T)`` curves over F9(w) to Weierstrass form.

Coefficients live in F9(w), represented by :class:`RationalFunction` (the
variable prints as ``t``). Three shapes are handled:

* cubic ``Q``: ``X = c3 T``, ``Y = c3 V``;
* quartic with a rational root, moved to ``T = 0``: ``X = d / T``,
  ``Y = d V / T^2``;
* quartic with a rational point ``(0, q)``, ``q != 0``: the classical
  substitution ``x = (2q (V + q) + d T) / T^2`` followed by completing the
  square, which gives ``Y^2 = X^3 + c X^2 + (b d - a e) X + (a d^2 + b^2 e - a c e)``.

A quasi-elliptic surface cut by a 3O parameter gives instead the cuspidal
curve ``Z^3 = a T^2 + b T + c``; completing the square turns it into
``Y^2 = X^3 - a^3 (c - b^2 / 4a)`` with ``X = a Z`` and ``Y = a^2 (T + b / 2a)``.

Denominators are cleared at the end with ``X -> D^2 X``, ``Y -> D^3 Y``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb
from typing import List, Optional, Sequence, Tuple

from ..algebra.poly import Polynomial, poly_lcm, squarefree_split
from ..algebra.rational import RationalFunction, as_rational
from ..algebra.roots import polynomial_roots
from ..errors import ModelError
from .maps import ModelMap, apply_map
from .points import ZERO_POINT, SurfacePoint
from .weierstrass import WeierstrassModel

logger = logging.getLogger(__name__)

CUBIC = "cubic"
QUARTIC_ROOT = "quartic_root"
QUARTIC_POINT = "quartic_point"
CUSPIDAL = "cuspidal"

Coefficients = Tuple[RationalFunction, ...]


def _rf(values: Sequence) -> Coefficients:
    out = [as_rational(v) for v in values]
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def shift_coefficients(coeffs: Sequence, t0) -> Coefficients:
    """Coefficients of ``Q(T + t0)``, constant term first."""
    coeffs = _rf(coeffs)
    t0 = as_rational(t0)
    out = [as_rational(0)] * len(coeffs)
    for k, c in enumerate(coeffs):
        if not c:
            continue
        power = as_rational(1)
        for j in range(k, -1, -1):
            out[j] = out[j] + c * power * comb(k, j)
            power = power * t0
    return _rf(out)


def evaluate(coeffs: Sequence, t) -> RationalFunction:
    acc = as_rational(0)
    for c in reversed(_rf(coeffs)):
        acc = acc * t + c
    return acc


def _clear_denominators(a2: RationalFunction, a4: RationalFunction, a6: RationalFunction) -> Tuple[WeierstrassModel, RationalFunction]:
    scale = Polynomial.constant(1)
    for value in (a2, a4, a6):
        scale = poly_lcm(scale, value.den)
    d = as_rational(scale)
    d2 = d * d
    coeffs = []
    for value, power in ((a2, d2), (a4, d2 * d2), (a6, d2 * d2 * d2)):
        scaled = value * power
        if not scaled.is_polynomial():
            raise ModelError(f"could not clear the denominator of {value}")
        coeffs.append(scaled.num)
    return WeierstrassModel(*coeffs), d


@dataclass(frozen=True)
class CurveConversion:
    """
    A birational map from ``V^2 = Q(T)`` to :attr:`model`.

    ``coeffs`` is ``Q`` after the marked point has been moved to ``T = 0``
    (for the quartic shapes); ``shift`` is the original ``T``-coordinate of
    that point, or ``None`` when it sat at ``T = infinity``.
    """

    model: WeierstrassModel
    kind: str
    coeffs: Coefficients
    shift: Optional[RationalFunction]
    q: RationalFunction
    scale: RationalFunction

    def _to_local(self, t, v) -> Optional[Tuple[RationalFunction, RationalFunction]]:
        t, v = as_rational(t), as_rational(v)
        if self.kind == CUBIC:
            return t, v
        if self.shift is None:
            if not t:
                return None
            return t.inverse(), v / (t * t)
        return t - self.shift, v

    def _from_local(self, t: RationalFunction, v: RationalFunction) -> Optional[Tuple[RationalFunction, RationalFunction]]:
        if self.kind == CUBIC:
            return t, v
        if self.shift is None:
            if not t:
                return None
            return t.inverse(), v / (t * t)
        return t + self.shift, v

    def forward(self, t, v) -> Optional[SurfacePoint]:
        """Image of the curve point ``(t, v)``; ``None`` where the formulas degenerate."""
        if self.kind == CUSPIDAL:
            a = self.coeffs[2]
            d2 = self.scale * self.scale
            return SurfacePoint(a * as_rational(v) * d2, a * a * (as_rational(t) + self.shift) * d2 * self.scale)
        local = self._to_local(t, v)
        if local is None:
            return None
        t, v = local
        d2 = self.scale * self.scale
        if self.kind == CUBIC:
            c3 = self.coeffs[3]
            return SurfacePoint(c3 * t * d2, c3 * v * d2 * self.scale)
        d = self.coeffs[1]
        if self.kind == QUARTIC_ROOT:
            if not t:
                return ZERO_POINT
            return SurfacePoint(d / t * d2, d * v / (t * t) * d2 * self.scale)
        q = self.q
        c = self.coeffs[2]
        if not t:
            return ZERO_POINT if v == q else None
        x = (q * (v + q) * 2 + d * t) / (t * t)
        y = (q * q * (v + q) * 4 + q * (d * t + c * t * t) * 2 - d * d * t * t / (q * 2)) / (t * t * t)
        a1, a3 = d / q, q * self.coeffs[3] * 2
        big_y = y + (a1 * x + a3) / 2
        return SurfacePoint(x * d2, big_y * d2 * self.scale)

    def backward(self, p: SurfacePoint) -> Optional[Tuple[RationalFunction, RationalFunction]]:
        """Curve point mapping to ``p``; ``None`` for the marked point and degenerate cases."""
        if p.is_zero:
            return None
        x_f, y_f = p.coordinates
        d2 = self.scale * self.scale
        x, big_y = x_f / d2, y_f / (d2 * self.scale)
        if self.kind == CUSPIDAL:
            a = self.coeffs[2]
            return big_y / (a * a) - self.shift, x / a
        if self.kind == CUBIC:
            c3 = self.coeffs[3]
            return self._from_local(x / c3, big_y / c3)
        d = self.coeffs[1]
        if self.kind == QUARTIC_ROOT:
            if not x:
                return None
            t = d / x
            return self._from_local(t, big_y * t * t / d)
        q = self.q
        c = self.coeffs[2]
        a1, a3 = d / q, q * self.coeffs[3] * 2
        y = big_y - (a1 * x + a3) / 2
        if not y:
            return None
        t = ((x + c) * q * 2 - d * d / (q * 2)) / y
        v = -q + t * (t * x - d) / (q * 2)
        return self._from_local(t, v)


def cubic_to_weierstrass(coeffs: Sequence) -> CurveConversion:
    """``V^2 = c3 T^3 + c2 T^2 + c1 T + c0`` with ``c3 != 0``."""
    cs = _rf(coeffs)
    if len(cs) != 4:
        raise ModelError(f"expected a cubic in T, got degree {len(cs) - 1}")
    c0, c1, c2, c3 = cs
    model, scale = _clear_denominators(c2, c1 * c3, c0 * c3 * c3)
    return CurveConversion(model, CUBIC, cs, None, as_rational(0), scale)


def cuspidal_to_weierstrass(coeffs: Sequence) -> CurveConversion:
    """
    ``Z^3 = a T^2 + b T + c`` with ``a != 0``; the curve points are ``(T, Z)``.

    ``shift`` records ``b / 2a``.
    """
    cs = _rf(coeffs)
    if len(cs) != 3:
        raise ModelError(f"expected a quadratic in T, got degree {len(cs) - 1}")
    c, b, a = cs
    shift = b / (a * 2)
    delta = c - b * b / (a * 4)
    zero = as_rational(0)
    model, scale = _clear_denominators(zero, zero, -(a * a * a * delta))
    logger.debug("cuspidal conversion gives %s", model)
    return CurveConversion(model, CUSPIDAL, cs, shift, zero, scale)


def quartic_to_weierstrass(coeffs: Sequence, point: Optional[Tuple[object, object]] = None) -> CurveConversion:
    """
    Convert ``V^2 = Q(T)``, ``deg Q = 4``, using a rational point.

    Args:
        coeffs: ``Q`` constant term first, entries in F9(w).
        point: ``(T0, V0)`` on the curve, or ``None`` for a point at
            ``T = infinity`` (the leading coefficient must then be a square).
    """
    cs = _rf(coeffs)
    if len(cs) == 4:
        return cubic_to_weierstrass(cs)
    if len(cs) != 5:
        raise ModelError(f"expected a quartic in T, got degree {len(cs) - 1}")
    if point is None:
        lead = cs[4].sqrt()
        if lead is None:
            raise ModelError("no rational point at infinity: the leading coefficient is not a square")
        local = tuple(reversed(cs))
        q = lead
        shift = None
    else:
        t0, v0 = as_rational(point[0]), as_rational(point[1])
        if v0 * v0 != evaluate(cs, t0):
            raise ModelError(f"({t0}, {v0}) is not on V^2 = Q(T)")
        local = shift_coefficients(cs, t0)
        local = local + (as_rational(0),) * (5 - len(local))
        q = v0
        shift = t0
    e, d, c, b, a = local
    if not q:
        if not d:
            raise ModelError("the marked root is a multiple root of Q")
        model, scale = _clear_denominators(c, b * d, a * d * d)
        kind = QUARTIC_ROOT
    else:
        model, scale = _clear_denominators(c, b * d - a * e, a * d * d + b * b * e - a * c * e)
        kind = QUARTIC_POINT
    logger.debug("%s conversion gives %s", kind, model)
    return CurveConversion(model, kind, tuple(local), shift, q, scale)


def normal_form(m: WeierstrassModel, root_degree: int = 4) -> Tuple[WeierstrassModel, ModelMap]:
    """
    Translate a polynomial 2-torsion abscissa to ``x = 0`` when one exists.

    Among the roots of the cubic the one giving the fewest total degree, then
    the fewest terms, then the smallest printed form wins.
    """
    roots = polynomial_roots([m.a6, m.a4, m.a2], root_degree, m.field)
    if not roots:
        return m, ModelMap.identity()
    best = None
    for r in roots:
        phi = ModelMap(1, r)
        candidate = apply_map(m, phi)
        score = (
            sum(c.degree for c in candidate.coefficients if c),
            sum(1 for c in candidate.coefficients for k in c.coeffs if k),
            candidate.to_text(),
        )
        if best is None or score < best[0]:
            best = (score, candidate, phi)
    return best[1], best[2]


def absorb_squares(
    c: Polynomial, m: WeierstrassModel, simplify: bool = True
) -> Tuple[WeierstrassModel, ModelMap]:
    """
    Rewrite ``y^2 = c(t) (x^3 + a2 x^2 + a4 x + a6)`` as a Weierstrass model.

    With ``c = h^2 q``, ``q`` squarefree, the square part goes into ``y`` and
    the twist by ``q`` is absorbed by ``X = q x``, ``Y = q y / h``, giving
    ``(q a2, q^2 a4, q^3 a6)``. The returned map is the one applied by
    :func:`normal_form` afterwards (the identity when ``simplify`` is off).
    """
    if not c:
        raise ModelError("cannot absorb a zero factor")
    _, q = squarefree_split(c)
    twisted = WeierstrassModel(m.a2 * q, m.a4 * q * q, m.a6 * q * q * q, field=m.field)
    if not simplify:
        return twisted, ModelMap.identity()
    return normal_form(twisted)


def quartic_points(coeffs: Sequence, candidates: List[RationalFunction]) -> List[Tuple[RationalFunction, RationalFunction]]:
    """Points ``(T0, V0)`` with ``T0`` among ``candidates`` and ``Q(T0)`` a square."""
    out = []
    for t0 in candidates:
        value = evaluate(coeffs, t0)
        root = value.sqrt()
        if root is not None:
            out.append((t0, root))
    return out
