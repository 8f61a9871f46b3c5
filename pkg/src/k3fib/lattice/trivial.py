"""Trivial lattice of a fibration and Shioda-Tate rank accounting."""

from __future__ import annotations

from typing import TYPE_CHECKING, Tuple

from ..errors import LatticeError
from .gram import gram_det
from .roots import RootSystem

if TYPE_CHECKING:
    from ..tate.fibers import FiberConfiguration

#: Picard number of the supersingular K3 surface
RHO = 22


def fiber_roots(cfg: "FiberConfiguration") -> RootSystem:
    return RootSystem.of(cfg.lattice_labels())


def trivial_lattice(cfg: "FiberConfiguration") -> Tuple[int, int]:
    """``(rank, |disc|)`` of the lattice spanned by the zero section, a fiber and the fiber components."""
    rank = 2 + sum(fd.component_count - 1 for fd in cfg)
    disc = 1
    for label in fiber_roots(cfg):
        disc *= abs(gram_det(label))
    return rank, disc


def disc_trivial_signed(cfg: "FiberConfiguration") -> int:
    """Signed discriminant; the hyperbolic plane contributes ``-1``."""
    disc = -1
    for label in fiber_roots(cfg):
        disc *= gram_det(label)
    return disc


def shioda_tate_mw_rank(cfg: "FiberConfiguration", rho: int = RHO) -> int:
    rank = rho - 2 - sum(fd.component_count - 1 for fd in cfg)
    if rank < 0:
        raise LatticeError(f"fiber components exceed the Picard number {rho}")
    return rank
