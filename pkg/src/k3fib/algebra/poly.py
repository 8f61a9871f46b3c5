"""
Dense univariate polynomials over F9.

Coefficients are stored lowest degree first with no trailing zeros, so the zero
polynomial is the empty tuple. Operators accept field elements and Python
integers on either side.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple, Union

from ..errors import FieldError
from .field import ELEMENTS, F9, ONE, ZERO, Field, FieldElement, Scalar, coerce

PolyLike = Union["Polynomial", FieldElement, int]


class Polynomial:
    __slots__ = ("coeffs",)

    coeffs: Tuple[FieldElement, ...]

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    def __reduce__(self):
        return (Polynomial, (self.coeffs,))

    # --- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "Polynomial":
        return cls([ZERO] * k + [coerce(c)])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "Polynomial":
        result = cls((1,))
        for r in roots:
            result = result * cls((-coerce(r), 1))
        return result

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        from .parse import parse_polynomial

        return parse_polynomial(text)

    # --- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k: int) -> FieldElement:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return self.leading == ONE

    def order(self) -> int:
        """Lowest exponent with a nonzero coefficient (the valuation at t = 0)."""
        if not self.coeffs:
            raise FieldError("order of the zero polynomial is infinite")
        return next(k for k, c in enumerate(self.coeffs) if c)

    def in_field(self, field: Field) -> bool:
        return all(field.contains(c) for c in self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    # --- arithmetic -------------------------------------------------------

    def __add__(self, other: PolyLike) -> "Polynomial":
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __pos__(self) -> "Polynomial":
        return self

    def __sub__(self, other: PolyLike) -> "Polynomial":
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: PolyLike) -> "Polynomial":
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: PolyLike) -> "Polynomial":
        if isinstance(other, (FieldElement, int)):
            c = coerce(other)
            return Polynomial([c * x for x in self.coeffs])
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise FieldError("negative power of a polynomial; use RationalFunction")
        result = ONE_POLY
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: PolyLike) -> Tuple["Polynomial", "Polynomial"]:
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if not other:
            raise FieldError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = other.leading.inverse()
        if len(rem) <= dq:
            return ZERO_POLY, self
        quot = [ZERO] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = c * inv
            quot[k - dq] = q
            for j, y in enumerate(other.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - q * y
        return Polynomial(quot), Polynomial(rem[:dq])

    def __floordiv__(self, other: PolyLike) -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: PolyLike) -> "Polynomial":
        return divmod(self, other)[1]

    def __truediv__(self, other):
        if isinstance(other, (FieldElement, int)):
            return self * coerce(other).inverse()
        if isinstance(other, Polynomial):
            from .rational import RationalFunction

            return RationalFunction(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        from .rational import RationalFunction

        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return RationalFunction(other, self)

    def exact_div(self, other: PolyLike) -> "Polynomial":
        q, r = divmod(self, other)
        if r:
            raise FieldError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Polynomial") -> bool:
        return not (other % self)

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        return self * self.leading.inverse()

    # --- evaluation and calculus -----------------------------------------

    def __call__(self, x):
        """Evaluate at a field element, or compose with a polynomial/rational function."""
        if isinstance(x, (FieldElement, int)):
            x = coerce(x)
            acc = ZERO
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        if not self.coeffs:
            return x * 0
        acc = None
        for c in reversed(self.coeffs):
            acc = x * 0 + c if acc is None else acc * x + c
        return acc

    def compose(self, q: "Polynomial") -> "Polynomial":
        return self(q)

    def derivative(self) -> "Polynomial":
        return Polynomial([c * k for k, c in enumerate(self.coeffs)][1:])

    def shift(self, alpha: Scalar) -> "Polynomial":
        """Return ``p(t + alpha)``."""
        return self(Polynomial((alpha, 1)))

    def substitute_affine(self, alpha: Scalar, beta: Scalar) -> "Polynomial":
        """Return ``p(alpha*t + beta)``."""
        return self(Polynomial((beta, alpha)))

    def reverse(self, n: Optional[int] = None) -> "Polynomial":
        """Return ``t^n p(1/t)``; ``n`` defaults to the degree."""
        if n is None:
            n = self.degree
        if n < self.degree:
            raise FieldError(f"cannot reverse degree-{self.degree} polynomial at weight {n}")
        padded = list(self.coeffs) + [ZERO] * (n + 1 - len(self.coeffs))
        return Polynomial(reversed(padded))

    def truncate(self, n: int) -> "Polynomial":
        """Keep terms of degree < n."""
        return Polynomial(self.coeffs[:n])

    def frobenius(self) -> "Polynomial":
        """``p(t)^3`` computed coefficient-wise."""
        out = [ZERO] * (3 * len(self.coeffs))
        for k, c in enumerate(self.coeffs):
            out[3 * k] = c ** 3
        return Polynomial(out)

    def cube_root(self) -> Optional["Polynomial"]:
        """Inverse Frobenius, or ``None`` when a monomial exponent is not divisible by 3."""
        if any(c for k, c in enumerate(self.coeffs) if k % 3):
            return None
        return Polynomial([c.cube_root() for c in self.coeffs[::3]])

    def sqrt(self) -> Optional["Polynomial"]:
        """Square root of a perfect square, or ``None``."""
        if not self.coeffs:
            return self
        if self.degree % 2:
            return None
        lead = self.leading.sqrt()
        if lead is None:
            return None
        n = self.degree // 2
        root = [ZERO] * (n + 1)
        root[n] = lead
        inv2 = (lead * 2).inverse()
        for k in range(n - 1, -1, -1):
            acc = self.coeff(n + k)
            for j in range(k + 1, n):
                l = n + k - j
                if k < l <= n:
                    acc = acc - root[j] * root[l]
            root[k] = acc * inv2
        candidate = Polynomial(root)
        return candidate if candidate * candidate == self else None

    # --- comparison and display ------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (FieldElement, int)):
            return self.coeffs == Polynomial.constant(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Polynomial", self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms: List[str] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            mono = "t" if k == 1 else f"t^{k}"
            terms.append(mono if c == ONE else f"{c}*{mono}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"Polynomial('{self}')"


def _as_poly(value) -> Optional[Polynomial]:
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (FieldElement, int)):
        return Polynomial.constant(value)
    return None


ZERO_POLY = Polynomial()
ONE_POLY = Polynomial((1,))
T = Polynomial((0, 1))


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    while q:
        p, q = q, p % q
    return p.monic()


def poly_lcm(p: Polynomial, q: Polynomial) -> Polynomial:
    if not p or not q:
        return ZERO_POLY
    return (p * q // poly_gcd(p, q)).monic()


def poly_arith(p: Polynomial, q: Polynomial, op: str):
    """Apply ``op`` in {add, sub, mul, divrem, gcd}."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "divrem":
        return divmod(p, q)
    if op == "gcd":
        return poly_gcd(p, q)
    raise FieldError(f"unknown polynomial operation {op!r}")


def roots_with_multiplicity(
    p: Polynomial, field: Field = F9
) -> Tuple[List[Tuple[FieldElement, int]], Polynomial]:
    """
    Find every root of ``p`` in ``field`` by exhaustive evaluation.

    Returns:
        ``(roots, remainder)`` where ``roots`` lists ``(alpha, multiplicity)``
        in table order and ``remainder`` has no roots in ``field``, so that
        ``prod (t - alpha)^m * remainder == p``.
    """
    if not p:
        raise FieldError("roots of the zero polynomial are undefined")
    roots: List[Tuple[FieldElement, int]] = []
    rest = p
    for alpha in field.elements():
        lin = Polynomial((-alpha, 1))
        mult = 0
        while rest.degree > 0 and not rest(alpha):
            rest = rest.exact_div(lin)
            mult += 1
        if mult:
            roots.append((alpha, mult))
    return roots, rest


def squarefree_factorization(p: Polynomial) -> List[Tuple[Polynomial, int]]:
    """
    Squarefree decomposition in characteristic 3.

    Returns monic, squarefree, pairwise coprime factors with multiplicities
    such that ``p = lc(p) * prod f^m``.
    """
    if not p:
        raise FieldError("squarefree factorization of the zero polynomial")
    f = p.monic()
    if f.degree <= 0:
        return []
    out: List[Tuple[Polynomial, int]] = []
    d = f.derivative()
    if not d:
        root = f.cube_root()
        assert root is not None
        return [(g, 3 * m) for g, m in squarefree_factorization(root)]
    c = poly_gcd(f, d)
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        fac = (w // y).monic()
        if fac.degree > 0:
            out.append((fac, i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        root = c.monic().cube_root()
        if root is None:
            raise FieldError(f"inconsistent squarefree factorization of {p}")
        out.extend((g, 3 * m) for g, m in squarefree_factorization(root))
    return sorted(out, key=lambda fm: (fm[1], fm[0].degree, str(fm[0])))


def squarefree_split(p: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Return ``(h, q)`` with ``p = h^2 * q``, ``h`` monic and ``q`` squarefree."""
    h = ONE_POLY
    q = Polynomial.constant(p.leading)
    for fac, m in squarefree_factorization(p):
        h = h * fac ** (m // 2)
        if m % 2:
            q = q * fac
    return h, q


def is_squarefree(p: Polynomial) -> bool:
    if not p:
        return False
    if p.degree == 0:
        return True
    d = p.derivative()
    return bool(d) and poly_gcd(p, d).degree == 0


def interpolate(points: Sequence[Tuple[Scalar, Scalar]]) -> Polynomial:
    """Lagrange interpolation through distinct abscissae."""
    xs = [coerce(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise FieldError("interpolation nodes must be distinct")
    result = ZERO_POLY
    for k, (xk, yk) in enumerate(points):
        basis = ONE_POLY
        denom = ONE
        for j, xj in enumerate(xs):
            if j != k:
                basis = basis * Polynomial((-xj, 1))
                denom = denom * (coerce(xk) - xj)
        result = result + basis * (coerce(yk) / denom)
    return result


def field_roots(p: Polynomial, field: Field = F9) -> List[FieldElement]:
    return [a for a in field.elements() if not p(a)] if p else list(ELEMENTS)
