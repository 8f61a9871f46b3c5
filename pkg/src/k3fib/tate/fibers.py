"""
Fiber data produced by the classifiers.

Each component records how the function ``x + a`` (``a`` regular at the
place) vanishes along it:

    ord(x + a) = min(multiplicity * v(a + centre), depth)

where ``centre`` is a local polynomial in the uniformizer ``s``. Simple
components that share a centre are told apart by a branch condition on ``y``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from ..algebra.field import FieldElement
from ..algebra.place import Place
from ..algebra.poly import Polynomial
from ..errors import ClassificationError
from .kodaira import KodairaType

logger = logging.getLogger(__name__)

#: ``y / (x - shift)`` reduces to the branch value
SLOPE = "slope"
#: ``y / s^k`` reduces to the branch value
POWER = "power"


#: (label, multiplicity, depth) of the non-simple components of the E-type
#: fibers, read off the weighted blow-ups of y^2 = x^3 + s^k
E6_INTERNAL = (("c1", 2, 2), ("c2", 3, 4), ("c3", 2, 3), ("c4", 2, 3))
#: the IV* arm through each internal component ends in this simple one; both
#: carry the same branch of y
E6_ARMS = {"c3": "e1", "c4": "e2"}
E7_INTERNAL = (("c1", 2, 2), ("c2", 3, 4), ("c3", 4, 6), ("c4", 3, 5), ("c5", 2, 4), ("c6", 2, 3))
E8_INTERNAL = (
    ("c1", 2, 2), ("c2", 3, 4), ("c3", 4, 6), ("c4", 5, 8),
    ("c5", 6, 10), ("c6", 4, 7), ("c7", 2, 4), ("c8", 3, 5),
)


@dataclass(frozen=True)
class Branch:
    kind: str
    value: Optional[FieldElement]
    power: int = 0


@dataclass(frozen=True)
class Component:
    label: str
    multiplicity: int
    depth: int
    centre: Polynomial
    branch: Optional[Branch] = None

    @property
    def is_simple(self) -> bool:
        return self.multiplicity == 1

    @property
    def is_identity(self) -> bool:
        return self.label == "id"

    def required_order(self, needed: int) -> Optional[int]:
        """
        Smallest ``k`` with ``min(multiplicity * k, depth) >= needed``.

        Returns ``0`` when the condition is vacuous and ``None`` when
        ``needed`` exceeds the depth, so no choice of ``a`` suffices.
        """
        if needed <= 0:
            return 0
        if needed > self.depth:
            return None
        return -(-needed // self.multiplicity)


def arm_branches(simple: List[Component]) -> Dict[str, Optional[Branch]]:
    """Branches of the internal IV* components, copied from the simple ends of their arms."""
    leaves = {c.label: c.branch for c in simple}
    return {arm: leaves.get(leaf) for arm, leaf in E6_ARMS.items()}


@dataclass(frozen=True)
class FiberData:
    """
    Classification of one fiber.

    ``components`` is the component frame: every component whose chart data
    is known, identity first. ``shift`` is the accumulated translation of
    ``x`` in the local parameter.
    """

    place: Place
    kodaira: KodairaType
    v_delta: Optional[int]
    components: Tuple[Component, ...]
    shift: Polynomial
    quasi: bool = False

    @property
    def lattice_label(self) -> Optional[str]:
        return self.kodaira.lattice_label

    @property
    def component_count(self) -> int:
        return self.kodaira.component_count

    @property
    def wild(self) -> int:
        """``v(Delta)`` minus the Euler number; ``0`` for tame and quasi-elliptic fibers."""
        if self.v_delta is None:
            return 0
        return self.v_delta - self.kodaira.discriminant_order

    @property
    def singular_x(self) -> FieldElement:
        """``x``-coordinate of the singular point of the reduced fiber."""
        return self.shift.coeff(0)

    def component(self, label: str) -> Component:
        for comp in self.components:
            if comp.label == label:
                return comp
        known = ", ".join(c.label for c in self.components)
        raise ClassificationError(f"fiber {self.kodaira} at {self.place} has no component {label!r} (known: {known})")

    def simple_labels(self) -> List[str]:
        return [c.label for c in self.components if c.is_simple]

    def report_line(self) -> str:
        lattice = self.lattice_label or "-"
        v = "-" if self.v_delta is None else str(self.v_delta)
        return f"place={self.place.label} kodaira={self.kodaira} lattice={lattice} v_delta={v} m={self.component_count}"

    def to_dict(self) -> Dict[str, object]:
        return {
            "place": self.place.label,
            "kodaira": self.kodaira.symbol,
            "lattice": self.lattice_label,
            "v_delta": self.v_delta,
            "m": self.component_count,
            "wild": self.wild,
        }


@dataclass(frozen=True)
class FiberConfiguration:
    """
    Singular fibers ordered by place.

    ``unsplit`` is the squarefree part of the discriminant without roots in
    F9: every zero of it carries an I1 fiber over a place of higher degree.
    """

    fibers: Tuple[FiberData, ...] = field(default_factory=tuple)
    is_quasi_elliptic: bool = False
    unsplit: Polynomial = field(default_factory=lambda: Polynomial.constant(1))

    def __iter__(self) -> Iterator[FiberData]:
        return iter(self.fibers)

    def __len__(self) -> int:
        return len(self.fibers)

    def at(self, place: Place) -> Optional[FiberData]:
        for fd in self.fibers:
            if fd.place == place:
                return fd
        return None

    def reducible(self) -> List[FiberData]:
        return [fd for fd in self.fibers if fd.lattice_label is not None]

    def lattice_labels(self) -> List[str]:
        return [fd.lattice_label for fd in self.reducible()]

    @property
    def v_delta_sum(self) -> int:
        return sum(fd.v_delta or 0 for fd in self.fibers) + max(self.unsplit.degree, 0)

    @property
    def trivial_rank(self) -> int:
        return 2 + sum(fd.component_count - 1 for fd in self.fibers)

    def report_lines(self) -> List[str]:
        lines = [fd.report_line() for fd in self.fibers]
        if self.unsplit.degree > 0:
            lines.append(
                f"place=[{self.unsplit}] kodaira=I1 lattice=- v_delta={self.unsplit.degree} m=1"
            )
        return lines

    def to_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {
            "quasi_elliptic": self.is_quasi_elliptic,
            "fibers": [fd.to_dict() for fd in self.fibers],
        }
        if self.unsplit.degree > 0:
            out["unsplit_i1"] = str(self.unsplit)
        return out
