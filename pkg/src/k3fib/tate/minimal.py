"""Global minimal models by repeated Tate step 11 reductions."""

from __future__ import annotations

import logging
from typing import Tuple

from ..algebra.field import F9
from ..algebra.place import INFINITY, Place, rational_places
from ..algebra.poly import Polynomial
from ..errors import ModelError
from ..model.maps import ModelMap, apply_map
from ..model.weierstrass import WeierstrassModel, discriminant
from .algorithm import local_coefficients, run_tate

logger = logging.getLogger(__name__)


def _local_run(m: WeierstrassModel, place: Place, weight: int = 2):
    a2, a4, a6 = local_coefficients(m, place, weight)
    delta = discriminant(WeierstrassModel(a2, a4, a6, field=m.field))
    if not delta:
        raise ModelError(f"discriminant vanishes identically near {place}")
    return run_tate(a2, a4, a6, delta.order())


def infinity_weight(m: WeierstrassModel) -> int:
    """Smallest ``M`` with ``deg a_k <= M*k``; K3 models have ``M <= 2``."""
    weight = 0
    for k, coeff in zip((2, 4, 6), m.coefficients):
        if coeff:
            weight = max(weight, -(-coeff.degree // k))
    return weight


def minimize(m: WeierstrassModel) -> Tuple[WeierstrassModel, ModelMap]:
    """
    Remove every non-minimal place, finite places first and infinity last.

    Returns the minimal model and the map ``x = u^2 x' + r, y = u^3 y'`` from
    the input to it. Quasi-elliptic models are returned unchanged.

    Raises:
        ModelError: the model stays minimal at infinity with weight above 2,
            so no K3 model lies in its class.
    """
    total = ModelMap.identity()
    if m.is_quasi_elliptic():
        return m, total
    delta = m.discriminant()
    if not delta:
        raise ModelError("discriminant vanishes identically")
    places, _ = rational_places(delta, F9)
    for place, mult in places:
        while mult >= 12:
            run = _local_run(m, place)
            if run.minimal:
                break
            alpha = place.root
            s = Polynomial((-alpha, 1))
            phi = ModelMap(s, run.shift.substitute_affine(1, -alpha))
            logger.info("reducing at t = %s by %s", place, phi)
            m = apply_map(m, phi)
            total = total.then(phi)
            mult -= 12
    weight = infinity_weight(m)
    while weight > 2:
        run = _local_run(m, INFINITY, weight)
        if run.minimal:
            raise ModelError(f"model is minimal at infinity with weight {weight}; not a K3 surface")
        phi = ModelMap(1, run.shift.reverse(2 * weight))
        logger.info("reducing at infinity (weight %d) by %s", weight, phi)
        m = apply_map(m, phi)
        total = total.then(phi)
        weight = min(weight - 1, infinity_weight(m))
    return m, total
