"""
Niemeier root systems and the extraction of ``A2^2``.

Every fibration of the surface corresponds to a copy of ``A2^2`` in a
Niemeier lattice; its orthogonal complement's roots are the reducible fibers.
The extraction codes follow the catalog: ``m`` removes ``A2^2`` from the
m-th factor type, ``mn`` removes one ``A2`` each from the m-th and n-th.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Dict, List, Tuple

from ..errors import LatticeError
from .roots import EMPTY, LabelLike, RootLabel, RootSystem, parse_factors

logger = logging.getLogger(__name__)

#: NS(X) has rank 22; the hyperbolic plane and the fiber roots use the rest
MW_RANK_BUDGET = 20

NIEMEIER_TEXT = (
    "A1^24", "A2^12", "A3^8", "A4^6", "A5^4 D4", "D4^6", "A6^4", "A7^2 D5^2",
    "A8^3", "A9^2 D6", "D6^4", "E6^4", "A11 D7 E6", "A12^2", "D8^3", "A15 D9",
    "A17 E7", "D10 E7^2", "D12^2", "A24", "D16 E8", "E8^3", "D24",
)

#: printed complement of one A2, and of A2^2, for the exceptional small cases
_A2_TABLE = {"A2": "0", "A3": "0", "D4": "0", "D5": "A1^2", "D6": "A3", "E6": "A2^2", "E7": "A5", "E8": "E6"}
_A2SQ_TABLE = {
    "A2": "0", "A3": "0", "A5": "0", "A6": "0", "D4": "0", "D5": "0", "D6": "0",
    "D7": "0", "D8": "A1^2", "D9": "A3", "E6": "A2", "E7": "A2", "E8": "A2^2",
}


def niemeier_roots() -> List[RootSystem]:
    """The 23 root systems of the Niemeier lattices other than Leech."""
    return [RootSystem.parse(text) for text in NIEMEIER_TEXT]


def contains_a2(label: LabelLike) -> bool:
    label = RootLabel.parse(label)
    return not (label.family == "A" and label.rank < 2)


def a2_complement(label: LabelLike) -> RootSystem:
    """Roots orthogonal to an ``A2`` in ``label`` (the embedding is unique)."""
    label = RootLabel.parse(label)
    if not contains_a2(label):
        raise LatticeError(f"{label} contains no A2")
    text = _A2_TABLE.get(str(label))
    if text is not None:
        return RootSystem.parse(text)
    return RootSystem((RootLabel(label.family, label.rank - 3),))


def contains_a2sq(label: LabelLike) -> bool:
    label = RootLabel.parse(label)
    return contains_a2(label) and any(contains_a2(lab) for lab in a2_complement(label))


def a2sq_complement(label: LabelLike) -> RootSystem:
    """
    Roots orthogonal to ``A2^2`` in ``label``.

    Labels that cannot hold ``A2^2`` return the empty system, as the printed
    table does; use :func:`contains_a2sq` to tell the cases apart.
    """
    label = RootLabel.parse(label)
    text = _A2SQ_TABLE.get(str(label))
    if text is not None:
        return RootSystem.parse(text)
    if not contains_a2sq(label):
        return EMPTY
    return RootSystem((RootLabel(label.family, label.rank - 6),))


def iterated_complement(label: LabelLike) -> RootSystem:
    """``A2^2`` complement computed as the A2 complement inside the A2 complement."""
    first = a2_complement(label)
    for idx, lab in enumerate(first.labels):
        if contains_a2(lab):
            rest = first.labels[:idx] + first.labels[idx + 1:]
            return RootSystem(rest) + a2_complement(lab)
    raise LatticeError(f"{label} contains no A2^2")


@dataclass(frozen=True)
class ExtractionRow:
    source: RootSystem
    code: str
    roots: RootSystem

    @property
    def mw_rank(self) -> int:
        return MW_RANK_BUDGET - self.roots.rank

    def format(self) -> str:
        return f"{self.source} | {self.code}: {self.roots} | {self.mw_rank}"


def _remove(factors: List[Tuple[RootLabel, int]], *indices: int) -> Tuple[List[RootLabel], List[RootLabel]]:
    """Labels left after removing one copy of each indexed factor, and the removed labels."""
    kept: List[RootLabel] = []
    removed: List[RootLabel] = []
    counts: Dict[int, int] = {}
    for idx in indices:
        counts[idx] = counts.get(idx, 0) + 1
    for idx, (label, power) in enumerate(factors):
        take = counts.get(idx, 0)
        if take > power:
            raise LatticeError(f"cannot remove {take} copies of {label}")
        kept.extend([label] * (power - take))
        removed.extend([label] * take)
    return kept, removed


def extractions(source: str) -> List[ExtractionRow]:
    """
    Every way to place ``A2^2`` in the root system ``source``.

    Factor types are numbered from 1 in the order written, so
    ``"E6 D7 A11"`` and ``"A11 D7 E6"`` number their codes differently.
    """
    factors = parse_factors(source)
    whole = RootSystem.parse(source)
    rows: List[ExtractionRow] = []
    for idx, (label, _) in enumerate(factors):
        if contains_a2sq(label):
            kept, _ = _remove(factors, idx)
            rows.append(ExtractionRow(whole, f"{idx + 1}", RootSystem(tuple(kept)) + a2sq_complement(label)))
    for a, b in combinations_with_replacement(range(len(factors)), 2):
        if a == b and factors[a][1] < 2:
            continue
        if not (contains_a2(factors[a][0]) and contains_a2(factors[b][0])):
            continue
        kept, removed = _remove(factors, a, b)
        roots = RootSystem(tuple(kept))
        for lab in removed:
            roots = roots + a2_complement(lab)
        rows.append(ExtractionRow(whole, f"{a + 1}{b + 1}", roots))
    rows.sort(key=lambda r: (len(r.code), r.code))
    return rows


#: factor order used when numbering the extraction codes
EXTRACTION_SOURCES = (
    "A2^12", "A3^8", "A4^6", "D4^6", "D4 A5^4", "A6^4", "D5^2 A7^2", "A8^3",
    "D6^4", "D6 A9^2", "E6^4", "E6 D7 A11", "A12^2", "D8^3", "D9 A15", "E7 A17",
    "E7^2 D10", "D12^2", "E8^3", "E8 D16", "A24", "D24",
)

#: the extraction table as printed: (source, code, roots, stated MW rank)
PRINTED_ROWS: Tuple[Tuple[str, str, str, int], ...] = (
    ("A2^12", "", "A2^10", 0),
    ("A3^8", "", "A3^6", 2),
    ("A4^6", "", "A1^2 A4^4", 2),
    ("D4^6", "", "D4^4", 4),
    ("D4 A5^4", "12", "A2 A5^3", 3),
    ("D4 A5^4", "2", "D4 A5^3", 1),
    ("D4 A5^4", "22", "A2^2 D4 A5^2", 2),
    ("A6^4", "1", "A6^3", 2),
    ("A6^4", "11", "A3^2 A6^2", 2),
    ("D5^2 A7^2", "11", "A1^4 A7^2", 2),
    ("D5^2 A7^2", "2", "A1 D5^2 A7", 2),
    ("D5^2 A7^2", "12", "A1^2 A4 D5 A7", 2),
    ("D5^2 A7^2", "22", "A4^2 D5^2", 2),
    ("A8^3", "1", "A2 A8^2", 2),
    ("A8^3", "11", "A5^2 A8", 2),
    ("D6^4", "1", "D6^3", 2),
    ("D6^4", "11", "A3^2 D6^2", 2),
    ("D6 A9^2", "1", "A9^2", 2),
    ("D6 A9^2", "2", "A3 D6 A9", 2),
    ("D6 A9^2", "12", "A3 A6 A9", 2),
    ("D6 A9^2", "22", "A6^2 D6", 2),
    ("E6^4", "1", "A2 E6^3", 0),
    ("E6^4", "11", "A2^4 E6^2", 0),
    ("E6 D7 A11", "1", "A2 D7 A11", 0),
    ("E6 D7 A11", "2", "E6 A11", 3),
    ("E6 D7 A11", "12", "A2^2 D4 A11", 1),
    ("E6 D7 A11", "3", "E6 D7 A8", 2),
    ("E6 D7 A11", "13", "A2^2 D7 A8", 1),
    ("E6 D7 A11", "23", "D4 E6 A8", 2),
    ("A12^2", "1", "A6 A12", 2),
    ("A12^2", "11", "A9^2", 2),
    ("D8^3", "1", "A1^2 D8^2", 2),
    ("D8^3", "11", "D5^2 D8", 2),
    ("D9 A15", "1", "A3 A15", 2),
    ("D9 A15", "2", "A9 D9", 2),
    ("D9 A15", "12", "D6 A12", 2),
    ("E7 A17", "1", "A2 A17", 1),
    ("E7 A17", "2", "E7 A11", 2),
    ("E7 A17", "12", "A5 A14", 1),
    ("E7^2 D10", "1", "A2 E7 D10", 1),
    ("E7^2 D10", "11", "A5^2 D10", 0),
    ("E7^2 D10", "2", "D4 E7^2", 2),
    ("E7^2 D10", "12", "A5 D7 E7", 1),
    ("D12^2", "1", "D6 D12", 2),
    ("D12^2", "11", "D9^2", 2),
    ("E8^3", "1", "A2^2 E8^2", 0),
    ("E8^3", "11", "E6^2 E8", 0),
    ("E8 D16", "1", "A2^2 D16", 0),
    ("E8 D16", "2", "E8 D10", 2),
    ("E8 D16", "12", "E6 D13", 1),
    ("A24", "", "A18", 2),
    ("D24", "", "D18", 2),
)


def enumerate_fibration_lattices() -> List[ExtractionRow]:
    """All extractions over the Niemeier list, in catalog order; there are 52."""
    rows: List[ExtractionRow] = []
    for source in EXTRACTION_SOURCES:
        rows.extend(extractions(source))
    logger.debug("enumerated %d extraction rows", len(rows))
    return rows


def printed_discrepancies() -> List[Tuple[str, str, str]]:
    """
    Printed rows whose roots or MW rank differ from the computed extraction.

    Returns ``(source, code, message)`` triples.
    """
    computed = {(str(r.source), r.code): r for r in enumerate_fibration_lattices()}
    out: List[Tuple[str, str, str]] = []
    for source, code, roots, rank in PRINTED_ROWS:
        key = (str(RootSystem.parse(source)), code or _single_code(source))
        row = computed.get(key)
        if row is None:
            out.append((source, code, "no such extraction"))
            continue
        printed = RootSystem.parse(roots)
        if printed != row.roots:
            out.append((source, code, f"printed {printed}, computed {row.roots}"))
        elif rank != row.mw_rank:
            out.append((source, code, f"printed MW rank {rank}, computed {row.mw_rank}"))
    return out


def _single_code(source: str) -> str:
    """Code of the only extraction of a one-type source, which the table leaves unlabeled."""
    factors = parse_factors(source)
    label, power = factors[0]
    return "1" if contains_a2sq(label) and power == 1 else "11"
