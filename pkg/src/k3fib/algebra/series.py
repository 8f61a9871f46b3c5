"""
Truncated Laurent series in a local parameter over F9.

A series is ``sigma^start * (c0 + c1 sigma + ...)`` known for every exponent
below ``precision``; ``precision`` is ``None`` for an exact (finite) series.
Arithmetic tracks precision the usual way, so a coefficient that was never
determined raises instead of silently reading as zero.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Tuple, Union

from ..errors import FieldError
from .field import ONE, ZERO, FieldElement, Scalar, coerce
from .place import _series_divide
from .poly import Polynomial

SeriesLike = Union["LaurentSeries", Polynomial, FieldElement, int]


class LaurentSeries:
    __slots__ = ("start", "coeffs", "precision")

    start: int
    coeffs: Tuple[FieldElement, ...]
    precision: Optional[int]

    def __init__(self, start: int, coeffs: Iterable[Scalar], precision: Optional[int] = None):
        cs = [coerce(c) for c in coeffs]
        if precision is not None:
            cs = cs[: max(0, precision - start)]
        lead = 0
        while lead < len(cs) and not cs[lead]:
            lead += 1
        cs = cs[lead:]
        start += lead
        while cs and not cs[-1]:
            cs.pop()
        if not cs:
            start = 0 if precision is None else precision
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    def __reduce__(self):
        return (LaurentSeries, (self.start, self.coeffs, self.precision))

    # --- constructors -----------------------------------------------------

    @classmethod
    def from_polynomial(cls, p: Polynomial, shift: int = 0) -> "LaurentSeries":
        """``sigma^shift * p(sigma)``, exactly."""
        return cls(shift, p.coeffs)

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "LaurentSeries":
        return cls(k, (c,))

    # --- queries ----------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.precision is None

    @property
    def leading(self) -> FieldElement:
        if not self.coeffs:
            raise FieldError("the zero series has no leading coefficient")
        return self.coeffs[0]

    def valuation(self) -> Optional[int]:
        """Order in the local parameter; ``None`` for the exact zero series."""
        if self.coeffs:
            return self.start
        if self.precision is None:
            return None
        raise FieldError(f"series vanishes to the known precision {self.precision}")

    def coeff(self, k: int) -> FieldElement:
        if self.precision is not None and k >= self.precision:
            raise FieldError(f"coefficient of sigma^{k} is beyond the precision {self.precision}")
        j = k - self.start
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return ZERO

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # --- arithmetic -------------------------------------------------------

    def __add__(self, other: SeriesLike) -> "LaurentSeries":
        other = _as_series(other)
        if other is None:
            return NotImplemented
        precision = _min_precision(self.precision, other.precision)
        lo = min(self.start, other.start)
        hi = max(self.start + len(self.coeffs), other.start + len(other.coeffs))
        if precision is not None:
            hi = min(hi, precision)
        return LaurentSeries(lo, [self.coeff(k) + other.coeff(k) for k in range(lo, max(lo, hi))], precision)

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.start, [-c for c in self.coeffs], self.precision)

    def __sub__(self, other: SeriesLike) -> "LaurentSeries":
        other = _as_series(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: SeriesLike) -> "LaurentSeries":
        other = _as_series(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: SeriesLike) -> "LaurentSeries":
        if isinstance(other, (FieldElement, int)):
            c = coerce(other)
            if not c:
                return ZERO_SERIES
            return LaurentSeries(self.start, [c * x for x in self.coeffs], self.precision)
        other = _as_series(other)
        if other is None:
            return NotImplemented
        if (self.is_exact and not self.coeffs) or (other.is_exact and not other.coeffs):
            return ZERO_SERIES
        precision = None
        if self.precision is not None:
            precision = self.precision + other.start
        if other.precision is not None:
            precision = _min_precision(precision, other.precision + self.start)
        a, b = self.coeffs, other.coeffs
        out = [ZERO] * max(0, len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return LaurentSeries(self.start + other.start, out, precision)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentSeries":
        if n < 0:
            raise FieldError("negative power of a series; use inverse()")
        result = ONE_SERIES
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shifted(self, k: int) -> "LaurentSeries":
        """Multiply by ``sigma^k``."""
        precision = None if self.precision is None else self.precision + k
        return LaurentSeries(self.start + k, self.coeffs, precision)

    def _terms(self, terms: int) -> int:
        if self.precision is None:
            return terms
        return min(terms, self.precision - self.start)

    def inverse(self, terms: int) -> "LaurentSeries":
        """``1/self`` to ``terms`` coefficients past its leading one."""
        if not self.coeffs:
            raise FieldError("inverse of a series with no known nonzero coefficient")
        if self.is_exact and len(self.coeffs) == 1:
            return LaurentSeries(-self.start, (self.coeffs[0].inverse(),))
        n = self._terms(terms)
        return LaurentSeries(-self.start, _series_divide([ONE], list(self.coeffs), n), n - self.start)

    def divide(self, other: SeriesLike, terms: int) -> "LaurentSeries":
        other = _as_series(other)
        if other is None:
            raise FieldError("cannot divide a series by a non-series value")
        return self * other.inverse(terms)

    def sqrt(self, terms: int) -> Optional["LaurentSeries"]:
        """A square root with the canonical leading coefficient, or ``None``."""
        if not self.coeffs:
            if self.is_exact:
                return self
            raise FieldError("square root of a series with no known nonzero coefficient")
        if self.start % 2:
            return None
        r0 = self.coeffs[0].sqrt()
        if r0 is None:
            return None
        n = self._terms(terms)
        inv = (r0 * 2).inverse()
        root: List[FieldElement] = [r0]
        for k in range(1, n):
            acc = self.coeffs[k] if k < len(self.coeffs) else ZERO
            for j in range(1, k):
                acc = acc - root[j] * root[k - j]
            root.append(acc * inv)
        half = self.start // 2
        return LaurentSeries(half, root, half + n)

    # --- comparison and display ------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentSeries):
            return (self.start, self.coeffs, self.precision) == (other.start, other.coeffs, other.precision)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("LaurentSeries", self.start, self.coeffs, self.precision))

    def __str__(self) -> str:
        terms: List[str] = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            k = self.start + j
            if k == 0:
                terms.append(str(c))
                continue
            mono = "s" if k == 1 else f"s^{k}"
            terms.append(mono if c == ONE else f"{c}*{mono}")
        if self.precision is not None:
            terms.append(f"O(s^{self.precision})")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"LaurentSeries('{self}')"


def _min_precision(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _as_series(value) -> Optional[LaurentSeries]:
    if isinstance(value, LaurentSeries):
        return value
    if isinstance(value, Polynomial):
        return LaurentSeries.from_polynomial(value)
    if isinstance(value, (FieldElement, int)):
        return LaurentSeries(0, (coerce(value),))
    return None


ZERO_SERIES = LaurentSeries(0, ())
ONE_SERIES = LaurentSeries(0, (ONE,))
