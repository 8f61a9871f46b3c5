"""
Polynomials in the old base coordinate ``T`` over the new function field F9(w).

After ``x`` is eliminated through the elliptic parameter, the old curve
equation becomes ``y^2 = R(T)`` with coefficients in F9(w). The coefficients
reuse :class:`RationalFunction`, whose variable prints as ``t`` but stands
for ``w`` here.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple, Union

from ..algebra.poly import Polynomial, poly_gcd, poly_lcm, squarefree_factorization, squarefree_split
from ..algebra.rational import RationalFunction, as_rational
from ..errors import FieldError
from ..tate.quasi import split_cube

W = RationalFunction(Polynomial((0, 1)))

Operand = Union["FiberPoly", RationalFunction, Polynomial, int]


class FiberPoly:
    __slots__ = ("coeffs",)

    coeffs: Tuple[RationalFunction, ...]

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("FiberPoly is immutable")

    @classmethod
    def constant_in_w(cls, p: Polynomial) -> "FiberPoly":
        """Lift a polynomial in ``T`` with F9 coefficients."""
        return cls(p.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> RationalFunction:
        if not self.coeffs:
            raise FieldError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiberPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: Operand) -> "FiberPoly":
        o = _lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        zero = as_rational(0)
        return FiberPoly(
            (self.coeffs[k] if k < len(self.coeffs) else zero) + (o.coeffs[k] if k < len(o.coeffs) else zero)
            for k in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> "FiberPoly":
        return FiberPoly(-c for c in self.coeffs)

    def __sub__(self, other: Operand) -> "FiberPoly":
        return self + (-_lift(other))

    def __mul__(self, other: Operand) -> "FiberPoly":
        o = _lift(other)
        if not self or not o:
            return FiberPoly()
        out: List[RationalFunction] = [as_rational(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return FiberPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "FiberPoly":
        acc = FiberPoly((1,))
        for _ in range(n):
            acc = acc * self
        return acc

    def __divmod__(self, other: "FiberPoly") -> Tuple["FiberPoly", "FiberPoly"]:
        if not other:
            raise FieldError("division by the zero polynomial")
        rem = list(self.coeffs)
        quot = [as_rational(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        inv = other.leading.inverse()
        for k in range(len(quot) - 1, -1, -1):
            c = rem[k + other.degree] * inv
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return FiberPoly(quot), FiberPoly(rem[: other.degree])

    def __floordiv__(self, other: "FiberPoly") -> "FiberPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "FiberPoly") -> "FiberPoly":
        return divmod(self, other)[1]

    def monic(self) -> "FiberPoly":
        if not self:
            return self
        inv = self.leading.inverse()
        return FiberPoly(c * inv for c in self.coeffs)

    def derivative(self) -> "FiberPoly":
        return FiberPoly(c * k for k, c in enumerate(self.coeffs[1:], start=1))

    def __call__(self, t0) -> RationalFunction:
        t0 = as_rational(t0)
        acc = as_rational(0)
        for c in reversed(self.coeffs):
            acc = acc * t0 + c
        return acc

    def clear_content(self) -> Tuple["FiberPoly", RationalFunction]:
        """
        Split off the largest square factor of the F9(w)-content.

        Returns ``(P, h)`` with ``self = h^2 * P``, the coefficients of ``P``
        polynomials in ``w`` whose gcd is squarefree.
        """
        if not self:
            return self, as_rational(1)
        den = Polynomial.constant(1)
        for c in self.coeffs:
            den = poly_lcm(den, c.den)
        # multiply by a square so the content stays comparable
        scaled = [c * as_rational(den * den) for c in self.coeffs]
        nums = [c.num for c in scaled]
        content = Polynomial()
        for n in nums:
            content = poly_gcd(content, n)
        h, _ = squarefree_split(content)
        out = FiberPoly(RationalFunction(n // (h * h)) for n in nums)
        return out, as_rational(h) / as_rational(den)

    def __str__(self) -> str:
        if not self:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            coeff = str(c).replace("t", "w")
            if " " in coeff or "+" in coeff or "-" in coeff[1:]:
                coeff = f"({coeff})"
            terms.append(coeff if k == 0 else f"{coeff}*T^{k}" if k > 1 else f"{coeff}*T")
        return " + ".join(reversed(terms))

    def __repr__(self) -> str:
        return f"FiberPoly('{self}')"


def _lift(value: Operand) -> FiberPoly:
    if isinstance(value, FiberPoly):
        return value
    return FiberPoly((value,))


def fiber_gcd(p: FiberPoly, q: FiberPoly) -> FiberPoly:
    """Monic gcd over F9(w)."""
    while q:
        p, q = q, p % q
    return p.monic()


def remove_square_factors(p: FiberPoly) -> Tuple[FiberPoly, FiberPoly]:
    """
    Write ``p = S^2 * Q`` with ``Q`` free of repeated factors in ``T``.

    The repeated part is found through ``gcd(p, p')``; a factor whose
    multiplicity is a multiple of 3 hides from the derivative and is left in
    ``Q``. Returns ``(S, Q)``.
    """
    square = FiberPoly((1,))
    while p.degree > 0:
        g = fiber_gcd(p, p.derivative())
        if g.degree < 1:
            break
        candidates = [g]
        dg = g.derivative()
        if dg:
            candidates.append(g // fiber_gcd(g, dg))
        for c in candidates:
            if c.degree > 0 and not (p % (c * c)):
                p = p // (c * c)
                square = square * c
                break
        else:
            break
    return square, p


def from_polynomials(coeffs: Sequence[Polynomial]) -> FiberPoly:
    """Build ``sum coeffs[k](w) T^k``."""
    return FiberPoly(as_rational(c) for c in coeffs)


def t_content(p: FiberPoly) -> Polynomial:
    """
    Gcd in F9[T] of the polynomials ``R_j(T)`` with ``p = sum_j w^j R_j(T)``.

    Every coefficient of ``p`` must be a polynomial in ``w``.
    """
    if any(not c.is_polynomial() for c in p.coeffs):
        raise FieldError("t_content needs coefficients polynomial in w")
    top = max((c.num.degree for c in p.coeffs if c), default=-1)
    content = Polynomial()
    for j in range(top + 1):
        content = poly_gcd(content, Polynomial(c.num.coeff(j) for c in p.coeffs))
    return content


def strip_squares(p: FiberPoly) -> FiberPoly:
    """
    Remove square factors from ``V^2 = p(T)`` without changing the curve.

    Squares of polynomials in ``T`` alone are split off through the
    squarefree decomposition of :func:`t_content`, then squares of the
    ``w``-content, then mixed repeated factors found by
    :func:`remove_square_factors`.
    """
    if not p:
        raise FieldError("cannot strip squares from the zero polynomial")
    p, _ = p.clear_content()
    h, _ = squarefree_split(t_content(p))
    if h.degree > 0:
        p = p // FiberPoly.constant_in_w(h * h)
    _, p = remove_square_factors(p)
    p, _ = p.clear_content()
    return p


def _cube_part(p: Polynomial) -> Polynomial:
    """Monic ``h`` of largest degree with ``h^3 | p``."""
    h = Polynomial.constant(1)
    if p.degree < 1:
        return h
    for fac, mult in squarefree_factorization(p):
        h = h * fac ** (mult // 3)
    return h


def _divide_cube_content(p: FiberPoly) -> FiberPoly:
    content = Polynomial()
    for c in p.coeffs:
        content = poly_gcd(content, c.num)
    h = _cube_part(content)
    if h.degree > 0:
        p = FiberPoly(RationalFunction(c.num // h ** 3) for c in p.coeffs)
    k = _cube_part(t_content(p))
    if k.degree > 0:
        p = p // FiberPoly.constant_in_w(k ** 3)
    return p


def strip_cubes(p: FiberPoly) -> FiberPoly:
    """
    Simplify ``Z^3 = p(T)`` without changing the curve.

    Denominators in ``w`` are cleared with a cube, cube factors of the
    ``w``-content and of :func:`t_content` are divided out, and every term
    ``g(w)^3 T^(3j)`` is absorbed by ``Z -> Z - g T^j``.
    """
    if not p:
        raise FieldError("cannot strip cubes from the zero polynomial")
    den = Polynomial.constant(1)
    for c in p.coeffs:
        den = poly_lcm(den, c.den)
    scale = as_rational(den) ** 3
    p = _divide_cube_content(FiberPoly(c * scale for c in p.coeffs))
    coeffs = list(p.coeffs)
    for k in range(0, len(coeffs), 3):
        _, rest = split_cube(coeffs[k].num)
        coeffs[k] = as_rational(rest)
    p = FiberPoly(coeffs)
    if not p:
        raise FieldError("Z^3 = p(T) is a cube in F9(w)[T]")
    return _divide_cube_content(p)
