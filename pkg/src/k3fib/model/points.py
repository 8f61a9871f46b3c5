"""
Sections of a Weierstrass model and the chord-tangent group law.

With ``a1 = a3 = 0`` the negation is ``(x, y) -> (x, -y)`` and in
characteristic 3 the tangent slope is ``(2 a2 x + a4) / (2 y)``.
"""

from __future__ import annotations

import logging
from typing import Optional, Tuple, Union

from ..algebra.field import F9, Field
from ..algebra.parse import parse_section
from ..algebra.poly import Polynomial
from ..algebra.rational import RationalFunction, as_rational
from ..errors import ModelError
from .weierstrass import WeierstrassModel

logger = logging.getLogger(__name__)

Coordinate = Union[RationalFunction, Polynomial, int]


class SurfacePoint:
    """A point of E(F9(t)): affine ``(x, y)`` or the zero section ``O``."""

    __slots__ = ("x", "y")

    x: Optional[RationalFunction]
    y: Optional[RationalFunction]

    def __init__(self, x: Optional[Coordinate] = None, y: Optional[Coordinate] = None):
        if (x is None) != (y is None):
            raise ModelError("a section needs both coordinates or neither")
        object.__setattr__(self, "x", None if x is None else as_rational(x))
        object.__setattr__(self, "y", None if y is None else as_rational(y))

    def __setattr__(self, name, value):
        raise AttributeError("SurfacePoint is immutable")

    def __reduce__(self):
        return (SurfacePoint, (self.x, self.y))

    @classmethod
    def zero(cls) -> "SurfacePoint":
        return ZERO_POINT

    @classmethod
    def parse(cls, text: str, field: Field = F9) -> "SurfacePoint":
        coords = parse_section(text, field)
        if coords is None:
            return ZERO_POINT
        return cls(*coords)

    @property
    def is_zero(self) -> bool:
        return self.x is None

    @property
    def coordinates(self) -> Tuple[RationalFunction, RationalFunction]:
        if self.x is None or self.y is None:
            raise ModelError("the zero section has no affine coordinates")
        return self.x, self.y

    def is_integral(self) -> bool:
        """Both coordinates are polynomials in t."""
        return self.is_zero or (self.x.is_polynomial() and self.y.is_polynomial())

    def __neg__(self) -> "SurfacePoint":
        if self.is_zero:
            return self
        return SurfacePoint(self.x, -self.y)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SurfacePoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash(("SurfacePoint", self.x, self.y))

    def __str__(self) -> str:
        if self.is_zero:
            return "O"
        return f"({self.x} ; {self.y})"

    def __repr__(self) -> str:
        return f"SurfacePoint('{self}')"


ZERO_POINT = SurfacePoint()


def is_on_curve(m: WeierstrassModel, p: SurfacePoint) -> bool:
    if p.is_zero:
        return True
    x, y = p.coordinates
    return y * y == m.cubic(x)


def _require_on_curve(m: WeierstrassModel, p: SurfacePoint) -> None:
    if not is_on_curve(m, p):
        raise ModelError(f"point {p} is not on {m}")


def negate_point(p: SurfacePoint) -> SurfacePoint:
    return -p


def add_points(m: WeierstrassModel, p: SurfacePoint, q: SurfacePoint, check: bool = True) -> SurfacePoint:
    """Group law on the generic fiber; ``O`` is the identity."""
    if check:
        _require_on_curve(m, p)
        _require_on_curve(m, q)
    if p.is_zero:
        return q
    if q.is_zero:
        return p
    x1, y1 = p.coordinates
    x2, y2 = q.coordinates
    if x1 == x2:
        if y1 + y2 == 0:
            return ZERO_POINT
        lam = (m.a2 * x1 * 2 + m.a4) / (y1 * 2)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - m.a2 - x1 - x2
    y3 = -(y1 + lam * (x3 - x1))
    return SurfacePoint(x3, y3)


def double_point(m: WeierstrassModel, p: SurfacePoint, check: bool = True) -> SurfacePoint:
    return add_points(m, p, p, check=check)


def multiply_point(m: WeierstrassModel, p: SurfacePoint, n: int, check: bool = True) -> SurfacePoint:
    """``n * p`` by double-and-add; negative ``n`` negates."""
    if check:
        _require_on_curve(m, p)
    if n < 0:
        return multiply_point(m, -p, -n, check=False)
    result = ZERO_POINT
    base = p
    while n:
        if n & 1:
            result = add_points(m, result, base, check=False)
        base = add_points(m, base, base, check=False)
        n >>= 1
    return result


def is_two_torsion(p: SurfacePoint) -> bool:
    return not p.is_zero and not p.y


def halve_two_torsion(m: WeierstrassModel, p: SurfacePoint) -> Tuple[SurfacePoint, ...]:
    """
    Points ``Q`` with ``2 Q = p`` for a 2-torsion point ``p = (x0, 0)``.

    After moving ``x0`` to the origin the curve reads ``y^2 = x (x^2 + A x + B)``;
    the halves have ``x = x0 + s`` with ``s^2 = B`` and ``y^2 = B (A + 2 s)``.
    Only halves with coordinates in F9(t) are returned.
    """
    if not is_two_torsion(p):
        raise ModelError(f"{p} is not a 2-torsion point")
    _require_on_curve(m, p)
    x0 = p.x
    a = m.a2 + x0 * 3
    b = x0 * x0 * 3 + m.a2 * x0 * 2 + m.a4
    halves = []
    root = b.sqrt()
    if root is None or not root:
        return ()
    for s in (root, -root):
        y2 = b * (a + s * 2)
        y = y2.sqrt()
        if y is None:
            continue
        for yy in ((y, -y) if y else (y,)):
            q = SurfacePoint(x0 + s, yy)
            if is_on_curve(m, q) and double_point(m, q, check=False) == p:
                halves.append(q)
    return tuple(halves)
