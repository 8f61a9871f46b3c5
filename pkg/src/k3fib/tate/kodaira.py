"""Kodaira fiber types and their numerical data."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from ..errors import ClassificationError, ParseError

_FAMILIES = ("I", "I*", "II", "III", "IV", "IV*", "III*", "II*")
_SYMBOL = re.compile(r"^(I)(\d+)(\*?)$|^(II|III|IV)(\*?)$")


@dataclass(frozen=True)
class KodairaType:
    family: str
    n: int = 0

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ClassificationError(f"unknown Kodaira family {self.family!r}")
        if self.n < 0 or (self.n and self.family not in ("I", "I*")):
            raise ClassificationError(f"invalid index {self.n} for {self.family}")

    @classmethod
    def parse(cls, text: str) -> "KodairaType":
        """Read ``I12``, ``I3*``, ``IV*``, ``II`` and similar symbols."""
        m = _SYMBOL.match(text.strip().replace("_", ""))
        if m is None:
            raise ParseError(f"unknown Kodaira symbol {text!r}")
        if m.group(1):
            return cls("I*" if m.group(3) else "I", int(m.group(2)))
        return cls(m.group(4) + m.group(5))

    @property
    def symbol(self) -> str:
        if self.family == "I":
            return f"I{self.n}"
        if self.family == "I*":
            return f"I{self.n}*"
        return self.family

    @property
    def lattice_label(self) -> Optional[str]:
        """Root lattice of the non-identity components, ``None`` for irreducible fibers."""
        if self.family == "I":
            return f"A{self.n - 1}" if self.n >= 2 else None
        if self.family == "I*":
            return f"D{self.n + 4}"
        return {"II": None, "III": "A1", "IV": "A2", "IV*": "E6", "III*": "E7", "II*": "E8"}[self.family]

    @property
    def component_count(self) -> int:
        if self.family == "I":
            return max(self.n, 1)
        if self.family == "I*":
            return self.n + 5
        return {"II": 1, "III": 2, "IV": 3, "IV*": 7, "III*": 8, "II*": 9}[self.family]

    @property
    def discriminant_order(self) -> int:
        """Euler number of the fiber, equal to ``v(Delta)`` when the fiber is tame."""
        if self.family == "I":
            return self.n
        if self.family == "I*":
            return self.n + 6
        return {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}[self.family]

    @property
    def can_be_wild(self) -> bool:
        """Additive fibers of potentially good reduction may carry a wild part in characteristic 3."""
        if self.family == "I":
            return False
        return self.family != "I*" or self.n == 0

    @property
    def is_reducible(self) -> bool:
        return self.component_count > 1

    def __str__(self) -> str:
        return self.symbol


I0 = KodairaType("I", 0)
