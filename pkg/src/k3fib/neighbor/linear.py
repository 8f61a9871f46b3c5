"""Exact linear solving over F9."""

from __future__ import annotations

from typing import List, Sequence

from ..algebra.field import ZERO, FieldElement, coerce
from ..errors import NeighborError


def solve_unique(rows: Sequence[Sequence[FieldElement]], rhs: Sequence[FieldElement], unknowns: int) -> List[FieldElement]:
    """
    Solve ``rows . a = rhs`` and insist on exactly one solution.

    Raises:
        NeighborError: inconsistent system, or a solution space of positive
            dimension; both carry the rank and the number of unknowns.
    """
    matrix = [[coerce(c) for c in row] + [coerce(b)] for row, b in zip(rows, rhs)]
    rank = 0
    pivots: List[int] = []
    for col in range(unknowns):
        pivot = next((r for r in range(rank, len(matrix)) if matrix[r][col]), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        inv = matrix[rank][col].inverse()
        matrix[rank] = [c * inv for c in matrix[rank]]
        for r in range(len(matrix)):
            if r != rank and matrix[r][col]:
                factor = matrix[r][col]
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[rank])]
        pivots.append(col)
        rank += 1
    if any(row[-1] for row in matrix[rank:]):
        raise NeighborError("pole conditions are inconsistent: no parameter has these poles", rank, unknowns)
    if rank < unknowns:
        raise NeighborError("pole conditions leave a family of parameters", rank, unknowns)
    solution = [ZERO] * unknowns
    for r, col in enumerate(pivots):
        solution[col] = matrix[r][-1]
    return solution
