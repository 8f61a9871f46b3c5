"""Gram matrices of ADE lattices, negative definite: ``-2`` on the diagonal, ``1`` on edges."""

from __future__ import annotations

from functools import lru_cache
from typing import List, Tuple

import sympy

from .roots import LabelLike, RootLabel, RootSystem


def dynkin_edges(label: RootLabel) -> List[Tuple[int, int]]:
    """
    Edges of the Dynkin diagram on nodes ``0 .. rank-1``.

    ``A_n`` is a chain. ``D_n`` is a chain of ``n-1`` nodes with the last
    node attached to node ``n-3``. ``E_n`` is a chain of ``n-1`` nodes with
    the last node attached to node ``2``.
    """
    n = label.rank
    if label.family == "A":
        return [(k, k + 1) for k in range(n - 1)]
    chain = [(k, k + 1) for k in range(n - 2)]
    branch = n - 3 if label.family == "D" else 2
    return chain + [(branch, n - 1)]


def gram(label: LabelLike) -> sympy.Matrix:
    label = RootLabel.parse(label)
    n = label.rank
    g = sympy.zeros(n, n)
    for k in range(n):
        g[k, k] = -2
    for a, b in dynkin_edges(label):
        g[a, b] = g[b, a] = 1
    return g


@lru_cache(maxsize=None)
def _det(label: RootLabel) -> int:
    return int(gram(label).det(method="bareiss"))


def gram_det(label: LabelLike) -> int:
    """Signed determinant by fraction-free elimination."""
    return _det(RootLabel.parse(label))


def family_det(label: LabelLike) -> int:
    """Closed form: ``(-1)^n (n+1)`` for A_n, ``(-1)^n 4`` for D_n, ``3, -2, 1`` for E6, E7, E8."""
    label = RootLabel.parse(label)
    n = label.rank
    if label.family == "A":
        return (-1) ** n * (n + 1)
    if label.family == "D":
        return (-1) ** n * 4
    return {6: 3, 7: -2, 8: 1}[n]


def system_gram(system: RootSystem) -> sympy.Matrix:
    """Block-diagonal Gram matrix of a root system."""
    if not len(system):
        return sympy.zeros(0, 0)
    return sympy.diag(*[gram(lab) for lab in system])


def system_det(system: RootSystem) -> int:
    det = 1
    for lab in system:
        det *= gram_det(lab)
    return det
