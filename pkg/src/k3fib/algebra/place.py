"""
Places of the base line, valuations and local expansions.

A finite place is a monic irreducible polynomial; for the degree-one places
the catalog uses, it is ``t - alpha`` and the local parameter is
``s = t - alpha``. At infinity the local parameter is ``s = 1/t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from ..errors import FieldError, ParseError, UnsupportedPlaceError
from .field import F9, ZERO, Field, FieldElement, coerce
from .poly import Polynomial, roots_with_multiplicity
from .rational import RationalFunction, as_rational

Expandable = Union[RationalFunction, Polynomial, FieldElement, int]


@dataclass(frozen=True)
class Place:
    """``poly`` is the monic irreducible generator, ``None`` at infinity."""

    poly: Optional[Polynomial] = None

    @classmethod
    def finite(cls, alpha) -> "Place":
        return cls(Polynomial((-coerce(alpha), 1)))

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @classmethod
    def from_poly(cls, p: Polynomial) -> "Place":
        if p.degree < 1:
            raise FieldError("a place needs a polynomial of positive degree")
        return cls(p.monic())

    @classmethod
    def parse(cls, text: str) -> "Place":
        token = text.strip().replace(" ", "")
        if token in ("inf", "oo", "∞", "infinity"):
            return INFINITY
        from .parse import parse_polynomial

        try:
            p = parse_polynomial(token)
        except ParseError:
            raise ParseError(f"unknown place {text!r}") from None
        if p.degree > 0:
            raise ParseError(f"place {text!r} is not a field constant")
        return cls.finite(p.coeff(0))

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    @property
    def root(self) -> FieldElement:
        """The point ``alpha`` of a degree-one finite place."""
        if self.poly is None or self.poly.degree != 1:
            raise UnsupportedPlaceError(f"place {self} has no rational root")
        return -self.poly.coeff(0)

    def require_rational(self) -> None:
        if self.degree > 1:
            raise UnsupportedPlaceError(f"place {self} has residue degree {self.degree} > 1")

    def sort_key(self) -> Tuple[int, int, str]:
        if self.poly is None:
            return (2, 0, "")
        if self.poly.degree == 1:
            return (0, self.root.index, "")
        return (1, self.poly.degree, str(self.poly))

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    @property
    def label(self) -> str:
        if self.poly is None:
            return "inf"
        if self.poly.degree == 1:
            return str(self.root)
        return f"[{self.poly}]"

    def __str__(self) -> str:
        return self.label


INFINITY = Place(None)


def rational_places(p: Polynomial, field: Field = F9) -> Tuple[List[Tuple[Place, int]], Polynomial]:
    """Degree-one places where ``p`` vanishes, with multiplicities, and the leftover factor."""
    roots, rest = roots_with_multiplicity(p, field)
    return [(Place.finite(a), m) for a, m in roots], rest


def _order_at(p: Polynomial, place: Place) -> int:
    if not p:
        raise FieldError("valuation of zero is infinite")
    if place.poly is not None and place.poly.degree == 1:
        return p.shift(place.root).order()
    assert place.poly is not None
    k = 0
    while True:
        q, r = divmod(p, place.poly)
        if r:
            return k
        p, k = q, k + 1


def valuation(r: Expandable, place: Place, weight: Optional[int] = None) -> int:
    """
    Order of vanishing of ``r`` at ``place``; negative for poles.

    At infinity a plain rational function has valuation ``deg den - deg num``.
    When ``weight`` is given, ``r`` is read as a homogenized coefficient of
    that total weight (``2*k`` for ``a_k``, ``24`` for the discriminant), so
    its valuation is ``weight - deg r``.
    """
    f = as_rational(r)
    if not f.num:
        raise FieldError("valuation of zero is infinite")
    if place.is_infinite:
        if weight is not None:
            if not f.is_polynomial():
                raise FieldError("weighted valuation at infinity needs a polynomial")
            return weight - f.num.degree
        return f.den.degree - f.num.degree
    v = _order_at(f.num, place)
    if f.den.degree > 0:
        v -= _order_at(f.den, place)
    return v


def _series_divide(a: List[FieldElement], b: List[FieldElement], n: int) -> List[FieldElement]:
    """First ``n`` coefficients of ``a/b`` with ``b[0] != 0``."""
    inv = b[0].inverse()
    out: List[FieldElement] = []
    work = list(a[:n]) + [ZERO] * max(0, n - len(a))
    for k in range(n):
        c = work[k] * inv
        out.append(c)
        if c:
            for j in range(1, min(len(b), n - k)):
                work[k + j] = work[k + j] - c * b[j]
    return out


def local_parts(f: Expandable, place: Place, weight: Optional[int] = None) -> Tuple[Polynomial, Polynomial]:
    """Numerator and denominator rewritten in the local parameter ``s`` at ``place``."""
    g = as_rational(f)
    place.require_rational()
    if place.is_infinite:
        num = g.num.reverse() if g.num else g.num
        den = g.den.reverse()
        shift = g.den.degree - (g.num.degree if g.num else 0)
        if weight is not None:
            shift += weight
        if shift >= 0:
            num = num * Polynomial.monomial(shift)
        else:
            den = den * Polynomial.monomial(-shift)
        return num, den
    alpha = place.root
    return g.num.shift(alpha), g.den.shift(alpha)


def laurent_expand(
    f: Expandable, place: Place, order: int, weight: Optional[int] = None
) -> Tuple[int, List[FieldElement]]:
    """
    Laurent expansion ``s^v * (c0 + c1 s + ...)`` at ``place``.

    Returns ``(v, [c0, ..., c_{order-1}])`` with ``c0 != 0`` unless ``f`` is zero,
    in which case ``v`` is 0 and all coefficients vanish.
    """
    num, den = local_parts(f, place, weight)
    if not num:
        return 0, [ZERO] * order
    a, b = num.order(), den.order()
    coeffs = _series_divide(list(num.coeffs[a:]), list(den.coeffs[b:]), order)
    return a - b, coeffs


def local_expand(f: Expandable, place: Place, order: int, weight: Optional[int] = None) -> List[FieldElement]:
    """
    Coefficients of ``s^0 .. s^(order-1)`` in the expansion of ``f`` at ``place``.

    ``f`` must be regular at ``place``. With ``weight`` at infinity the
    expansion is that of ``s^weight * f(1/s)``.
    """
    v, coeffs = laurent_expand(f, place, order, weight)
    if v < 0 and any(coeffs):
        raise FieldError(f"{f} has a pole of order {-v} at {place}")
    if v <= 0:
        return coeffs[:order]
    return ([ZERO] * v + coeffs)[:order]


def local_polynomial(f: Expandable, place: Place, order: int, weight: Optional[int] = None) -> Polynomial:
    """The truncated expansion of ``f`` as a polynomial in the local parameter."""
    return Polynomial(local_expand(f, place, order, weight))


def reduce_at(f: Expandable, place: Place) -> FieldElement:
    """Residue-field value of ``f`` at ``place`` (``f`` regular there)."""
    return local_expand(f, place, 1)[0]

