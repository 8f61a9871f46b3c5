"""2-neighbor steps: divisors of fiber shape, elliptic parameters and the derived models."""

from .arcs import ARCS_PER_COMPONENT, Arc, component_arcs
from .ansatz import (
    SLOPE_KIND,
    X_KIND,
    Y_KIND,
    EllipticParameter,
    ParameterAnsatz,
    PoleEntry,
    PoleReport,
    arc_conditions,
    build_ansatz,
    pole_conditions,
    pole_order_check,
    solve_pole_conditions,
    validate_divisor,
)
from .derive import (
    Identification,
    NeighborResult,
    convert_curve,
    curve_in_w,
    reduce_scaling,
    derive_new_model,
    identify_target,
    neighbor_step,
)
from .divisor import DivisorSpec, DivisorTerm
from .fiberpoly import FiberPoly, remove_square_factors, strip_cubes, strip_squares, t_content
from .linear import solve_unique
