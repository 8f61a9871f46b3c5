"""The Neron-Severi discriminant identity."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import sympy

from ..errors import LatticeError
from ..lattice.trivial import disc_trivial_signed, shioda_tate_mw_rank
from .context import HeightContext

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiscCheck:
    value: Fraction
    target: int

    @property
    def ok(self) -> bool:
        return self.value == self.target

    def __str__(self) -> str:
        verdict = "pass" if self.ok else "FAIL"
        return f"disc(NS) = {self.value} (expected {self.target}): {verdict}"


def ns_disc_check(ctx: HeightContext, torsion_order: int, gram: Optional[sympy.Matrix] = None) -> DiscCheck:
    """
    ``disc(NS) = (-1)^r disc(T) det(MWL) / |tor|^2``, compared with ``-3^(2 sigma)``.

    ``gram`` is the height Gram matrix of a basis of the free part and must
    match the Shioda-Tate rank; it may be omitted for rank 0.

    Raises:
        LatticeError: the Gram matrix does not match the rank, or the result
            is not an integer.
    """
    if torsion_order < 1:
        raise LatticeError("torsion order must be positive")
    rank = shioda_tate_mw_rank(ctx.config, ctx.rho)
    size = 0 if gram is None else gram.shape[0]
    if size != rank:
        raise LatticeError(f"MW rank is {rank} but {size} sections were supplied")
    det = Fraction(1)
    if size:
        d = sympy.Rational(gram.det(method="bareiss"))
        det = Fraction(int(d.p), int(d.q))
    value = (-1) ** rank * disc_trivial_signed(ctx.config) * det / torsion_order ** 2
    if value.denominator != 1:
        raise LatticeError(f"disc(NS) = {value} is not an integer")
    logger.debug("disc(NS) = %s with rank %d and torsion %d", value, rank, torsion_order)
    return DiscCheck(value, ctx.disc_target)
