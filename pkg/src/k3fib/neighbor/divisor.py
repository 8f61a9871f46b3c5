"""
Divisor classes for neighbor steps.

A divisor file lists one term per line::

    # D5 fiber on the first fibration
    arity = 2
    target = 4
    2 O
    2 comp 0 id
    1 comp 0 a1
    1 sect (0 ; 0)

Component labels are the ones fiber classification assigns.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple, Union

from ..algebra.place import Place
from ..errors import ParseError
from ..model.points import SurfacePoint

logger = logging.getLogger(__name__)

ZERO_SECTION = "zero"
COMPONENT = "comp"
SECTION = "sect"

_E_PATTERNS = {
    "E6": {1: 3, 2: 3, 3: 1},
    "E7": {1: 2, 2: 3, 3: 2, 4: 1},
    "E8": {1: 1, 2: 2, 3: 2, 4: 2, 5: 1, 6: 1},
}


@dataclass(frozen=True)
class DivisorTerm:
    kind: str
    multiplicity: int
    place: Optional[Place] = None
    label: Optional[str] = None
    point: Optional[SurfacePoint] = None

    def __str__(self) -> str:
        if self.kind == ZERO_SECTION:
            return f"{self.multiplicity} O"
        if self.kind == COMPONENT:
            return f"{self.multiplicity} comp {self.place} {self.label}"
        return f"{self.multiplicity} sect {self.point}"


@dataclass(frozen=True)
class DivisorSpec:
    terms: Tuple[DivisorTerm, ...]
    arity: int = 2
    target: Optional[int] = None
    source: str = "<divisor>"
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @classmethod
    def from_text(cls, text: str, source: str = "<divisor>") -> "DivisorSpec":
        terms: List[DivisorTerm] = []
        arity, target = 2, None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" in line and not line.split()[0].isdigit():
                key, _, value = (part.strip() for part in line.partition("="))
                if key == "arity":
                    if value not in ("2", "3"):
                        raise ParseError(f"arity must be 2 or 3, got {value!r}", lineno, source)
                    arity = int(value)
                elif key == "target":
                    if not value.isdigit():
                        raise ParseError(f"target must be a fibration number, got {value!r}", lineno, source)
                    target = int(value)
                else:
                    raise ParseError(f"unknown key {key!r}", lineno, source)
                continue
            try:
                terms.append(_parse_term(line))
            except ParseError as exc:
                raise ParseError(exc.message, lineno, source) from None
        if not terms:
            raise ParseError("divisor has no terms", None, source)
        return cls(tuple(terms), arity, target, source)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "DivisorSpec":
        path = Path(path)
        return cls.from_text(path.read_text(encoding="utf-8"), source=str(path))

    @property
    def zero_multiplicity(self) -> int:
        return sum(t.multiplicity for t in self.terms if t.kind == ZERO_SECTION)

    @property
    def sections(self) -> List[DivisorTerm]:
        return [t for t in self.terms if t.kind == SECTION]

    def components(self) -> List[DivisorTerm]:
        return [t for t in self.terms if t.kind == COMPONENT]

    def places(self) -> List[Place]:
        return sorted({t.place for t in self.components()})

    def multiplicity(self, place: Place, label: str) -> int:
        return sum(t.multiplicity for t in self.components() if t.place == place and t.label == label)

    def fiber_shape(self) -> Optional[str]:
        """Lattice label of the fiber with this multiplicity pattern, when it is one."""
        counts = Counter(t.multiplicity for t in self.terms)
        mults = sorted(counts)
        if mults == [1]:
            n = counts[1]
            return f"A{n - 1}" if n >= 2 else None
        if mults == [1, 2] and counts[1] == 4:
            return f"D{counts[2] + 3}"
        for label, pattern in _E_PATTERNS.items():
            if dict(counts) == pattern:
                return label
        return None

    def to_text(self) -> str:
        lines = [f"arity = {self.arity}"]
        if self.target is not None:
            lines.append(f"target = {self.target}")
        lines.extend(str(t) for t in self.terms)
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        return " + ".join(str(t) for t in self.terms)


def _parse_term(line: str) -> DivisorTerm:
    head, _, rest = line.partition(" ")
    if not head.isdigit() or int(head) < 1:
        raise ParseError(f"term must start with a positive multiplicity: {line!r}")
    mult = int(head)
    rest = rest.strip()
    if rest == "O":
        return DivisorTerm(ZERO_SECTION, mult)
    kind, _, body = rest.partition(" ")
    body = body.strip()
    if kind == COMPONENT:
        parts = body.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'comp <place> <label>', got {line!r}")
        return DivisorTerm(COMPONENT, mult, place=Place.parse(parts[0]), label=parts[1])
    if kind == SECTION:
        point = SurfacePoint.parse(body)
        if point.is_zero:
            raise ParseError("use 'O' for the zero section")
        return DivisorTerm(SECTION, mult, point=point)
    raise ParseError(f"unknown divisor term {line!r}")
