"""Torsion orders and polynomial 2-torsion."""

from __future__ import annotations

import logging
from typing import List, Optional, Union

from ..algebra.roots import polynomial_roots
from ..model.points import SurfacePoint, add_points
from ..model.weierstrass import WeierstrassModel
from .context import HeightContext

logger = logging.getLogger(__name__)

DEFAULT_TORSION_BOUND = 12
DEFAULT_ROOT_DEGREE = 4


def _model(ctx: Union[HeightContext, WeierstrassModel]) -> WeierstrassModel:
    return ctx.model if isinstance(ctx, HeightContext) else ctx


def torsion_order(
    ctx: Union[HeightContext, WeierstrassModel], p: SurfacePoint, bound: int = DEFAULT_TORSION_BOUND
) -> Optional[int]:
    """Least ``n <= bound`` with ``nP = O``; ``None`` when there is none."""
    m = _model(ctx)
    if p.is_zero:
        return 1
    acc = p
    for n in range(2, bound + 1):
        acc = add_points(m, acc, p, check=(n == 2))
        if acc.is_zero:
            return n
    return None


def find_two_torsion(
    ctx: Union[HeightContext, WeierstrassModel], max_degree: int = DEFAULT_ROOT_DEGREE
) -> List[SurfacePoint]:
    """
    The points ``(x0, 0)`` with ``x0`` a polynomial root of the cubic.

    Roots of degree above ``max_degree`` are not searched.
    """
    m = _model(ctx)
    roots = polynomial_roots(list(reversed(m.coefficients)), max_degree, m.field)
    logger.debug("2-torsion abscissae: %s", ", ".join(map(str, roots)) or "none")
    return [SurfacePoint(x0, 0) for x0 in roots]
