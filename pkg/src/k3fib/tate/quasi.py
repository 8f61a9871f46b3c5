"""
Fibers of quasi-elliptic models ``y^2 = x^3 + f(t)``.

Every fiber is cuspidal. Locally ``f = g^3 + h`` where ``h`` collects the
monomials whose exponent is prime to 3; after ``x -> x - g`` only ``h``
matters and its order ``mu`` fixes the type.
"""

from __future__ import annotations

import logging
from typing import List, Tuple

from ..algebra.place import INFINITY, Place, rational_places
from ..algebra.field import F9
from ..algebra.poly import Polynomial
from ..errors import ClassificationError, ModelError, UnsupportedPlaceError
from ..model.weierstrass import WeierstrassModel
from .fibers import (
    E6_INTERNAL,
    E8_INTERNAL,
    POWER,
    Branch,
    Component,
    FiberConfiguration,
    FiberData,
    arm_branches,
)
from .kodaira import KodairaType

logger = logging.getLogger(__name__)

_TYPES = {1: "II", 2: "IV", 4: "IV*", 5: "II*"}


def split_cube(f: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Write ``f = g^3 + h`` with no exponent of ``h`` divisible by 3."""
    cubic = Polynomial([c if k % 3 == 0 else 0 for k, c in enumerate(f)])
    g = cubic.cube_root()
    assert g is not None
    return g, f - cubic


def _local_f(m: WeierstrassModel, place: Place) -> Polynomial:
    a2, a4, a6 = m.coefficients
    if a2 or a4:
        raise ClassificationError("quasi-elliptic classification needs a2 = a4 = 0")
    if place.is_infinite:
        if a6.degree > 12:
            raise ModelError(f"deg a6 = {a6.degree} exceeds 12")
        return a6.reverse(12)
    place.require_rational()
    return a6.shift(place.root)


def quasi_fiber_type(f: Polynomial, place: Place) -> KodairaType:
    """Kodaira type at ``place`` of ``y^2 = x^3 + f`` (``f`` global, degree at most 12)."""
    model = WeierstrassModel(0, 0, f)
    _, h = split_cube(_local_f(model, place))
    if not h:
        raise ClassificationError(f"x^3 + f is a cube near {place}")
    mu = h.order()
    if mu % 3 == 0:
        raise ClassificationError(f"order {mu} of the non-cube part is divisible by 3")
    return KodairaType(_TYPES[mu % 6])


def classify_quasi_place(m: WeierstrassModel, place: Place) -> FiberData:
    g, h = split_cube(_local_f(m, place))
    if not h:
        raise ClassificationError(f"x^3 + a6 is a cube near {place}")
    mu = h.order()
    q, rest = divmod(mu, 6)
    if rest not in _TYPES:
        raise ClassificationError(f"order {mu} of the non-cube part is divisible by 3")
    kodaira = KodairaType(_TYPES[rest])
    centre = -g
    lead = h.coeff(mu)

    def comp(label, mult, depth, branch=None):
        return Component(label, mult, depth + 2 * q * mult, centre, branch)

    comps: List[Component] = [comp("id", 1, 0)]
    if rest in (2, 4):
        root = lead.sqrt()
        neg = None if root is None else -root
        power = (1 if rest == 2 else 2) + 3 * q
        depth = 1 if rest == 2 else 2
        labels = ("a1", "a2") if rest == 2 else ("e1", "e2")
        comps.append(comp(labels[0], 1, depth, Branch(POWER, root, power)))
        comps.append(comp(labels[1], 1, depth, Branch(POWER, neg, power)))
    if rest == 4:
        arms = arm_branches(comps[1:])
        comps[1:1] = [comp(label, mult, depth, arms.get(label)) for label, mult, depth in E6_INTERNAL]
    elif rest == 5:
        comps.extend(comp(label, mult, depth) for label, mult, depth in E8_INTERNAL)
    logger.debug("quasi-elliptic fiber at %s: %s (mu=%d)", place, kodaira, mu)
    return FiberData(place, kodaira, None, tuple(comps), centre, quasi=True)


def quasi_places(m: WeierstrassModel) -> List[Place]:
    """Reducible fibers sit over the zeros of ``f'`` and, when ``t^11`` is missing from ``f``, at infinity."""
    a6 = m.coefficients[2]
    deriv = a6.derivative()
    if not deriv:
        raise ClassificationError("a6 is a cube; the surface is not quasi-elliptic")
    places, rest = rational_places(deriv, F9)
    if rest.degree > 0:
        raise UnsupportedPlaceError(f"factor {rest.monic()} of f' has no roots in F9")
    out = [p for p, _ in places]
    if not a6.coeff(11):
        out.append(INFINITY)
    return out


def classify_quasi(m: WeierstrassModel) -> FiberConfiguration:
    fibers = tuple(classify_quasi_place(m, place) for place in quasi_places(m))
    config = FiberConfiguration(fibers, True)
    if config.trivial_rank > 22:
        raise ClassificationError(f"trivial lattice rank {config.trivial_rank} exceeds 22")
    return config
