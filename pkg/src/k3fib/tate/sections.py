"""Which fiber component a section meets."""

from __future__ import annotations

import logging
from typing import Optional, Tuple

from ..algebra.place import Place, reduce_at, valuation
from ..algebra.poly import Polynomial
from ..algebra.rational import RationalFunction
from ..errors import ClassificationError, ModelError
from ..model.maps import point_at_infinity
from ..model.points import SurfacePoint, is_on_curve
from ..model.weierstrass import WeierstrassModel
from .fibers import POWER, SLOPE, Component, FiberData

logger = logging.getLogger(__name__)

#: the local parameter ``s`` vanishes here
ORIGIN = Place.finite(0)


def local_point(p: SurfacePoint, place: Place, weight: int = 2) -> Tuple[RationalFunction, RationalFunction]:
    """Coordinates of ``p`` as functions of the local parameter at ``place``."""
    if place.is_infinite:
        return point_at_infinity(p, weight).coordinates
    place.require_rational()
    x, y = p.coordinates
    return x.substitute_affine(1, place.root), y.substitute_affine(1, place.root)


def _v(f: RationalFunction) -> Optional[int]:
    return valuation(f, ORIGIN) if f else None


def _on_branch(comp: Component, x: RationalFunction, y: RationalFunction) -> bool:
    branch = comp.branch
    if branch is None:
        return True
    if branch.value is None:
        # non-split: the component is not defined over F9
        return False
    if branch.kind == SLOPE:
        diff = x - comp.centre
        if not diff:
            return False
        ratio = y / diff
    elif branch.kind == POWER:
        ratio = y / Polynomial.monomial(branch.power)
    else:
        raise ClassificationError(f"unknown branch kind {branch.kind!r}")
    v = _v(ratio)
    return v == 0 and reduce_at(ratio, ORIGIN) == branch.value


def component_of_section(m: WeierstrassModel, p: SurfacePoint, fd: FiberData) -> str:
    """
    Label of the simple component of ``fd`` met by ``p``; ``"id"`` for the identity.

    A section meets a non-identity component exactly when it passes through
    the singular point of the reduced fiber. Among the components whose
    chart it fits, the deepest one is the one it meets.

    Raises:
        ClassificationError: the section reduces to the singular point but
            fits no known simple component.
    """
    if p.is_zero:
        return "id"
    if not is_on_curve(m, p):
        raise ModelError(f"{p} is not a point of {m}")
    x, y = local_point(p, fd.place)
    vx = _v(x)
    if vx is not None and vx < 0:
        return "id"
    candidates = sorted(
        (c for c in fd.components if c.is_simple and not c.is_identity),
        key=lambda c: -c.depth,
    )
    for comp in candidates:
        diff = x - comp.centre
        if diff and valuation(diff, ORIGIN) < comp.depth:
            continue
        if _on_branch(comp, x, y):
            logger.debug("section %s meets %s at %s", p, comp.label, fd.place)
            return comp.label
    if reduce_at(x, ORIGIN) == fd.singular_x:
        raise ClassificationError(f"section {p} passes through the singular point at {fd.place} but fits no component")
    return "id"
