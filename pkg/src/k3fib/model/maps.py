"""
Coordinate changes between Weierstrass models.

A :class:`ModelMap` ``(u, r)`` substitutes ``x = u^2 x' + r`` and
``y = u^3 y'``. Since ``a1 = a3 = 0`` and ``3 = 0``, no ``s`` or ``t``
parameters are needed and ``a2`` only rescales.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Union

from ..algebra.field import ELEMENTS, FieldElement, Scalar, coerce
from ..algebra.poly import ZERO_POLY, Polynomial
from ..algebra.rational import RationalFunction, as_rational
from ..algebra.roots import polynomial_roots
from ..errors import FieldError, ModelError
from .points import ZERO_POINT, SurfacePoint
from .weierstrass import WeierstrassModel

logger = logging.getLogger(__name__)

MapLike = Union[RationalFunction, Polynomial, FieldElement, int]


@dataclass(frozen=True)
class ModelMap:
    u: RationalFunction
    r: RationalFunction

    def __init__(self, u: MapLike = 1, r: MapLike = 0):
        u_ = as_rational(u)
        if not u_:
            raise ModelError("model map with u = 0")
        object.__setattr__(self, "u", u_)
        object.__setattr__(self, "r", as_rational(r))

    @classmethod
    def identity(cls) -> "ModelMap":
        return cls(1, 0)

    @property
    def is_identity(self) -> bool:
        return self.u == 1 and not self.r

    def then(self, other: "ModelMap") -> "ModelMap":
        """The map applying ``self`` first and ``other`` second."""
        return ModelMap(self.u * other.u, self.r + self.u * self.u * other.r)

    def inverse(self) -> "ModelMap":
        uinv = self.u.inverse()
        return ModelMap(uinv, -self.r * uinv * uinv)

    def __str__(self) -> str:
        return f"u = {self.u}, r = {self.r}"


def apply_map(m: WeierstrassModel, phi: ModelMap) -> WeierstrassModel:
    """
    Transform ``m`` by ``phi``:

        a2' = a2 / u^2
        a4' = (2 a2 r + a4) / u^4
        a6' = (r^3 + a2 r^2 + a4 r + a6) / u^6
    """
    u2 = phi.u * phi.u
    r = phi.r
    a2 = as_rational(m.a2) / u2
    a4 = (r * m.a2 * 2 + m.a4) / (u2 * u2)
    a6 = m.cubic(r) / (u2 * u2 * u2)
    coeffs = []
    for name, value in (("a2", a2), ("a4", a4), ("a6", a6)):
        if not value.is_polynomial():
            raise ModelError(f"map {phi} leaves {name} = {value} non-polynomial")
        coeffs.append(value.num)
    return WeierstrassModel(*coeffs, field=m.field)


def map_point(phi: ModelMap, p: SurfacePoint) -> SurfacePoint:
    """Coordinates of ``p`` in the model produced by :func:`apply_map`."""
    if p.is_zero:
        return ZERO_POINT
    x, y = p.coordinates
    u2 = phi.u * phi.u
    return SurfacePoint((x - phi.r) / u2, y / (u2 * phi.u))


def _invert_variable(f: RationalFunction, weight: int) -> RationalFunction:
    """``s^weight * f(1/s)`` as a rational function of ``s``."""
    num, den = f.num, f.den
    if not num:
        return f
    exp = weight + den.degree - num.degree
    top, bottom = num.reverse(), den.reverse()
    if exp >= 0:
        top = top * Polynomial.monomial(exp)
    else:
        bottom = bottom * Polynomial.monomial(-exp)
    return RationalFunction(top, bottom)


def model_at_infinity(m: WeierstrassModel, weight: int = 2) -> WeierstrassModel:
    """
    The model in ``s = 1/t``: ``a_k'(s) = s^(weight*k) a_k(1/s)``.

    ``weight = 2`` is the K3 case; points follow :func:`point_at_infinity`.
    The operation is an involution.
    """
    coeffs = []
    for k, coeff in zip((2, 4, 6), m.coefficients):
        try:
            coeffs.append(coeff.reverse(weight * k))
        except FieldError:
            raise ModelError(
                f"deg a{k} = {coeff.degree} exceeds {weight * k}; not a weight-{weight} model"
            ) from None
    return WeierstrassModel(*coeffs, field=m.field)


def point_at_infinity(p: SurfacePoint, weight: int = 2) -> SurfacePoint:
    """``x' = s^(2*weight) x(1/s)``, ``y' = s^(3*weight) y(1/s)``."""
    if p.is_zero:
        return ZERO_POINT
    x, y = p.coordinates
    return SurfacePoint(_invert_variable(x, 2 * weight), _invert_variable(y, 3 * weight))


def substitute_base(m: WeierstrassModel, alpha: Scalar, beta: Scalar) -> WeierstrassModel:
    """The model over the base coordinate ``t -> alpha*t + beta``."""
    if not coerce(alpha):
        raise ModelError("base change needs alpha != 0")
    return WeierstrassModel(*(c.substitute_affine(alpha, beta) for c in m.coefficients), field=m.field)


def substitute_base_point(p: SurfacePoint, alpha: Scalar, beta: Scalar) -> SurfacePoint:
    if p.is_zero:
        return ZERO_POINT
    x, y = p.coordinates
    return SurfacePoint(x.substitute_affine(alpha, beta), y.substitute_affine(alpha, beta))


def _maps_to(m1: WeierstrassModel, phi: ModelMap, m2: WeierstrassModel) -> bool:
    try:
        return apply_map(m1, phi) == m2
    except ModelError:
        return False


def models_isomorphic(m1: WeierstrassModel, m2: WeierstrassModel, root_degree: int = 4) -> Optional[ModelMap]:
    """
    A map ``phi`` with ``apply_map(m1, phi) == m2``, or ``None``.

    When ``a2 != 0`` the map is forced: ``u^2 = a2/a2'`` and
    ``r = (a4' u^4 - a4) / (2 a2)``. When ``a2 = 0`` the shift ``r`` is a
    polynomial root of a cubic and is searched up to ``root_degree``; for
    ``a2 = a4 = 0`` only constant ``u`` are tried.
    """
    if m1 == m2:
        return ModelMap.identity()
    if bool(m1.a2) != bool(m2.a2):
        return None
    if not m1.a2 and bool(m1.a4) != bool(m2.a4):
        return None
    if m1.a2:
        u2 = as_rational(m1.a2) / m2.a2
        u = u2.sqrt()
        if u is None:
            return None
        r = (u2 * u2 * m2.a4 - m1.a4) / (m1.a2 * 2)
        phi = ModelMap(u, r)
        return phi if _maps_to(m1, phi, m2) else None
    if m1.a4:
        u4 = as_rational(m1.a4) / m2.a4
        z = u4.sqrt()
        if z is None:
            return None
        for u2 in (z, -z):
            u = u2.sqrt()
            if u is None:
                continue
            const = as_rational(m1.a6) - u2 * u2 * u2 * m2.a6
            if not const.is_polynomial():
                continue
            for r in polynomial_roots([const.num, m1.a4, ZERO_POLY], root_degree, m1.field):
                phi = ModelMap(u, r)
                if _maps_to(m1, phi, m2):
                    return phi
        return None
    for c in ELEMENTS[1:]:
        cube = m2.a6 * (c ** 6) - m1.a6
        r = cube.cube_root()
        if r is None:
            continue
        phi = ModelMap(c, r)
        if _maps_to(m1, phi, m2):
            return phi
    return None
