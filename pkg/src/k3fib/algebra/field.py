"""
The fields F3 and F9 = F3[i]/(i^2 + 1).

Elements are the nine interned instances of :class:`FieldElement`; arithmetic
goes through precomputed tables so that every operation is a lookup.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple, Union

from ..errors import FieldError

Scalar = Union["FieldElement", int]


class FieldElement:
    """An element ``a + b*i`` of F9 with ``a, b`` in {0, 1, 2}."""

    __slots__ = ("a", "b", "index")
    _cache: Dict[Tuple[int, int], "FieldElement"] = {}

    a: int
    b: int
    index: int

    def __new__(cls, a: int = 0, b: int = 0) -> "FieldElement":
        key = (a % 3, b % 3)
        cached = cls._cache.get(key)
        if cached is not None:
            return cached
        obj = super().__new__(cls)
        object.__setattr__(obj, "a", key[0])
        object.__setattr__(obj, "b", key[1])
        object.__setattr__(obj, "index", key[0] + 3 * key[1])
        cls._cache[key] = obj
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def __reduce__(self):
        return (FieldElement, (self.a, self.b))

    # --- arithmetic -------------------------------------------------------

    def __add__(self, other: Scalar) -> "FieldElement":
        other = _operand(other)
        if other is None:
            return NotImplemented
        return _ADD[self.index][other.index]

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "FieldElement":
        other = _operand(other)
        if other is None:
            return NotImplemented
        return _ADD[self.index][_NEG[other.index].index]

    def __rsub__(self, other: Scalar) -> "FieldElement":
        other = _operand(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other: Scalar) -> "FieldElement":
        other = _operand(other)
        if other is None:
            return NotImplemented
        return _MUL[self.index][other.index]

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return _NEG[self.index]

    def __pos__(self) -> "FieldElement":
        return self

    def inverse(self) -> "FieldElement":
        inv = _INV[self.index]
        if inv is None:
            raise FieldError("division by zero in F9")
        return inv

    def __truediv__(self, other: Scalar) -> "FieldElement":
        other = _operand(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> "FieldElement":
        other = _operand(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # --- structure --------------------------------------------------------

    def conj(self) -> "FieldElement":
        """Frobenius ``z -> z^3``, which is complex conjugation ``a + bi -> a - bi``."""
        return FieldElement(self.a, -self.b)

    def cube_root(self) -> "FieldElement":
        # Frobenius has order 2 on F9, so it is its own inverse.
        return self.conj()

    def norm(self) -> int:
        return (self.a * self.a + self.b * self.b) % 3

    def is_square(self) -> bool:
        return _SQRT[self.index] is not None

    def sqrt(self) -> Optional["FieldElement"]:
        """Canonical square root (smallest table index), or ``None``."""
        return _SQRT[self.index]

    def in_f3(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return self.index != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self is other
        if isinstance(other, int):
            return self is FieldElement(other, 0)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("F9", self.index))

    def __lt__(self, other: "FieldElement") -> bool:
        return self.index < other.index

    def __int__(self) -> int:
        if self.b:
            raise FieldError(f"{self} is not in F3")
        return self.a

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        imag = "i" if self.b == 1 else "2*i"
        if self.a == 0:
            return imag
        return f"({self.a}+{imag})"

    def __repr__(self) -> str:
        return f"FieldElement({self.a}, {self.b})"


def _operand(value) -> Optional[FieldElement]:
    if isinstance(value, FieldElement):
        return value
    if isinstance(value, int):
        return FieldElement(value, 0)
    return None


def coerce(value: Scalar) -> FieldElement:
    if isinstance(value, FieldElement):
        return value
    if isinstance(value, bool):
        return FieldElement(int(value), 0)
    if isinstance(value, int):
        return FieldElement(value, 0)
    raise FieldError(f"cannot interpret {value!r} as an element of F9")


ZERO = FieldElement(0, 0)
ONE = FieldElement(1, 0)
TWO = FieldElement(2, 0)
I = FieldElement(0, 1)

ELEMENTS: Tuple[FieldElement, ...] = tuple(FieldElement(a, b) for b in range(3) for a in range(3))


def _mul_raw(x: FieldElement, y: FieldElement) -> FieldElement:
    return FieldElement(x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a)


_ADD: List[List[FieldElement]] = [[FieldElement(x.a + y.a, x.b + y.b) for y in ELEMENTS] for x in ELEMENTS]
_MUL: List[List[FieldElement]] = [[_mul_raw(x, y) for y in ELEMENTS] for x in ELEMENTS]
_NEG: List[FieldElement] = [FieldElement(-x.a, -x.b) for x in ELEMENTS]
_INV: List[Optional[FieldElement]] = [None] + [
    next(y for y in ELEMENTS if _MUL[x.index][y.index] is ONE) for x in ELEMENTS[1:]
]
_SQRT: List[Optional[FieldElement]] = [None] * 9
for _y in reversed(ELEMENTS):
    _SQRT[_MUL[_y.index][_y.index].index] = _y


@dataclass(frozen=True)
class Field:
    """The working field: ``F3`` embeds in ``F9`` with ``b = 0``."""

    name: str

    def __post_init__(self):
        if self.name not in ("F3", "F9"):
            raise FieldError(f"unsupported field {self.name!r}; expected F3 or F9")

    @property
    def order(self) -> int:
        return 3 if self.name == "F3" else 9

    def elements(self) -> Iterator[FieldElement]:
        for e in ELEMENTS:
            if self.name == "F9" or e.in_f3():
                yield e

    def contains(self, e: FieldElement) -> bool:
        return self.name == "F9" or e.in_f3()

    def __str__(self) -> str:
        return self.name


F3 = Field("F3")
F9 = Field("F9")


def field_arith(a: Scalar, b: Scalar, op: str) -> FieldElement:
    """Apply ``op`` in {add, sub, mul, div} to two field elements."""
    a, b = coerce(a), coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise FieldError(f"unknown field operation {op!r}")
