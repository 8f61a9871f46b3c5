"""
Correction terms of the height pairing.

Component labels are those produced by fiber classification: ``a<k>`` on
``A_{n-1}`` fibers, ``near``/``far1``/``far2`` on ``D_{n+4}``, ``e1``/``e2``
on ``E6`` and ``e1`` on ``E7``. ``id`` always contributes 0.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from ..errors import LatticeError
from .roots import LabelLike, RootLabel

_A_INDEX = re.compile(r"^a(\d+)$")


def _a_index(label: RootLabel, comp: str) -> int:
    m = _A_INDEX.match(comp)
    if m is None or not 1 <= int(m.group(1)) <= label.rank:
        raise LatticeError(f"{comp!r} is not a simple component of {label}")
    return int(m.group(1))


def _check(comp: str, allowed, label: RootLabel) -> None:
    if comp not in allowed:
        raise LatticeError(f"{comp!r} is not a simple component of {label}")


def contribution(label: Optional[LabelLike], i: str, j: str) -> Fraction:
    """``contr(i, j)`` for a fiber of type ``label``; irreducible fibers pass ``None``."""
    if i == "id" or j == "id":
        return Fraction(0)
    if label is None:
        raise LatticeError(f"irreducible fiber has no component {i!r}")
    label = RootLabel.parse(label)
    if label.family == "A":
        n = label.rank + 1
        a, b = sorted((_a_index(label, i), _a_index(label, j)))
        return Fraction(a * (n - b), n)
    if label.family == "D":
        n = label.rank - 4
        for comp in (i, j):
            _check(comp, ("near", "far1", "far2"), label)
        if i == j:
            return Fraction(1) if i == "near" else 1 + Fraction(n, 4)
        if "near" in (i, j):
            return Fraction(1, 2)
        return Fraction(1, 2) + Fraction(n, 4)
    if label.rank == 6:
        for comp in (i, j):
            _check(comp, ("e1", "e2"), label)
        return Fraction(4, 3) if i == j else Fraction(2, 3)
    if label.rank == 7:
        _check(i, ("e1",), label)
        _check(j, ("e1",), label)
        return Fraction(3, 2)
    raise LatticeError(f"{label} has no simple non-identity component")
