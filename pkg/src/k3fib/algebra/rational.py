"""Rational functions in t over F9 kept in lowest terms with a monic denominator."""

from __future__ import annotations

from typing import Optional, Tuple, Union

from ..errors import FieldError
from .field import FieldElement, Scalar, coerce
from .poly import ONE_POLY, ZERO_POLY, Polynomial, poly_gcd

RationalLike = Union["RationalFunction", Polynomial, FieldElement, int]


class RationalFunction:
    __slots__ = ("num", "den")

    num: Polynomial
    den: Polynomial

    def __init__(self, num: Union[Polynomial, Scalar], den: Union[Polynomial, Scalar] = 1):
        if not isinstance(num, Polynomial):
            num = Polynomial.constant(num)
        if not isinstance(den, Polynomial):
            den = Polynomial.constant(den)
        if not den:
            raise FieldError("rational function with zero denominator")
        if not num:
            num, den = ZERO_POLY, ONE_POLY
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = den.leading
            if lead != 1:
                inv = lead.inverse()
                num, den = num * inv, den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def __reduce__(self):
        return (RationalFunction, (self.num, self.den))

    @classmethod
    def parse(cls, text: str) -> "RationalFunction":
        from .parse import parse_rational

        return parse_rational(text)

    # --- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise FieldError(f"{self} is not a polynomial")
        return self.num

    def degree(self) -> int:
        """``deg num - deg den``; the negative of the valuation at infinity."""
        if not self.num:
            raise FieldError("degree of the zero rational function")
        return self.num.degree - self.den.degree

    def __bool__(self) -> bool:
        return bool(self.num)

    # --- arithmetic -------------------------------------------------------

    def __add__(self, other: RationalLike) -> "RationalFunction":
        other = as_rational(other, strict=False)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __pos__(self) -> "RationalFunction":
        return self

    def __sub__(self, other: RationalLike) -> "RationalFunction":
        other = as_rational(other, strict=False)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: RationalLike) -> "RationalFunction":
        other = as_rational(other, strict=False)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: RationalLike) -> "RationalFunction":
        other = as_rational(other, strict=False)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise FieldError("division by the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other: RationalLike) -> "RationalFunction":
        other = as_rational(other, strict=False)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: RationalLike) -> "RationalFunction":
        other = as_rational(other, strict=False)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n)

    # --- evaluation -------------------------------------------------------

    def __call__(self, x):
        if isinstance(x, (FieldElement, int)):
            d = self.den(x)
            if not d:
                raise FieldError(f"{self} has a pole at t = {coerce(x)}")
            return self.num(x) / d
        return as_rational(self.num(x)) / as_rational(self.den(x))

    def substitute_affine(self, alpha: Scalar, beta: Scalar) -> "RationalFunction":
        return RationalFunction(self.num.substitute_affine(alpha, beta), self.den.substitute_affine(alpha, beta))

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den
        )

    def sqrt(self) -> Optional["RationalFunction"]:
        n, d = self.num.sqrt(), self.den.sqrt()
        if n is None or d is None:
            return None
        return RationalFunction(n, d)

    def cube_root(self) -> Optional["RationalFunction"]:
        n, d = self.num.cube_root(), self.den.cube_root()
        if n is None or d is None:
            return None
        return RationalFunction(n, d)

    # --- comparison and display ------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Polynomial, FieldElement, int)):
            return self.den == ONE_POLY and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.den == ONE_POLY:
            return hash(self.num)
        return hash(("RationalFunction", self.num, self.den))

    def __str__(self) -> str:
        if self.den == ONE_POLY:
            return str(self.num)
        num = str(self.num)
        if len(self.num) > 1 and sum(1 for c in self.num.coeffs if c) > 1:
            num = f"({num})"
        den = str(self.den)
        if sum(1 for c in self.den.coeffs if c) > 1 or self.den.leading != 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RationalFunction('{self}')"


def as_rational(value, strict: bool = True) -> Optional[RationalFunction]:
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, Polynomial):
        return RationalFunction(value)
    if isinstance(value, (FieldElement, int)):
        return RationalFunction(Polynomial.constant(value))
    if strict:
        raise FieldError(f"cannot interpret {value!r} as a rational function")
    return None


def numerator_denominator(value: RationalLike) -> Tuple[Polynomial, Polynomial]:
    r = as_rational(value)
    return r.num, r.den
