"""
ADE root labels and root systems.

Text forms follow the catalog: ``A2``, ``D_4``, ``E_{8}``, and products such
as ``A2^2 D4 A5^2`` or ``A_2^{12}``. ``0`` is the empty system.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Tuple, Union

from ..errors import LatticeError, ParseError

_FAMILY_ORDER = {"A": 0, "D": 1, "E": 2}
_FACTOR = re.compile(r"([ADE])_?\{?(\d+)\}?(?:\^\{?(\d+)\}?)?")


@dataclass(frozen=True)
class RootLabel:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _FAMILY_ORDER:
            raise LatticeError(f"unknown root family {self.family!r}")
        low = {"A": 1, "D": 4, "E": 6}[self.family]
        if self.rank < low or (self.family == "E" and self.rank > 8):
            raise LatticeError(f"{self.family}{self.rank} is not a root lattice")

    @classmethod
    def parse(cls, text: Union[str, "RootLabel"]) -> "RootLabel":
        if isinstance(text, RootLabel):
            return text
        m = _FACTOR.fullmatch(text.strip())
        if m is None or m.group(3) is not None:
            raise ParseError(f"bad root label {text!r}")
        return cls(m.group(1), int(m.group(2)))

    @property
    def sort_key(self) -> Tuple[int, int]:
        return self.rank, _FAMILY_ORDER[self.family]

    def __lt__(self, other: "RootLabel") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


LabelLike = Union[str, RootLabel]


def parse_factors(text: str) -> List[Tuple[RootLabel, int]]:
    """Factors with exponents in the order written."""
    body = text.replace(" ", "").replace("$", "")
    if body in ("", "0"):
        return []
    out: List[Tuple[RootLabel, int]] = []
    pos = 0
    for m in _FACTOR.finditer(body):
        if m.start() != pos:
            break
        out.append((RootLabel(m.group(1), int(m.group(2))), int(m.group(3) or 1)))
        pos = m.end()
    if pos != len(body):
        raise ParseError(f"bad root system {text!r}")
    return out


@dataclass(frozen=True)
class RootSystem:
    """A multiset of root labels kept in canonical order."""

    labels: Tuple[RootLabel, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(sorted(self.labels)))

    @classmethod
    def of(cls, labels: Iterable[LabelLike]) -> "RootSystem":
        return cls(tuple(RootLabel.parse(lab) for lab in labels))

    @classmethod
    def parse(cls, text: str) -> "RootSystem":
        labels: List[RootLabel] = []
        for label, power in parse_factors(text):
            labels.extend([label] * power)
        return cls(tuple(labels))

    @property
    def rank(self) -> int:
        return sum(lab.rank for lab in self.labels)

    def counts(self) -> Counter:
        return Counter(self.labels)

    def __add__(self, other: "RootSystem") -> "RootSystem":
        return RootSystem(self.labels + other.labels)

    def __iter__(self) -> Iterator[RootLabel]:
        return iter(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __str__(self) -> str:
        if not self.labels:
            return "0"
        parts = []
        for label in sorted(set(self.labels)):
            k = self.labels.count(label)
            parts.append(f"{label}^{k}" if k > 1 else str(label))
        return " ".join(parts)


EMPTY = RootSystem()
