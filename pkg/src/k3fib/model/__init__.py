"""Weierstrass models over F9(t), their sections and coordinate changes."""

from .conversion import (
    CurveConversion,
    absorb_squares,
    cubic_to_weierstrass,
    cuspidal_to_weierstrass,
    normal_form,
    quartic_points,
    quartic_to_weierstrass,
    shift_coefficients,
)
from .maps import (
    ModelMap,
    apply_map,
    map_point,
    model_at_infinity,
    models_isomorphic,
    point_at_infinity,
    substitute_base,
    substitute_base_point,
)
from .points import (
    ZERO_POINT,
    SurfacePoint,
    add_points,
    double_point,
    halve_two_torsion,
    is_on_curve,
    is_two_torsion,
    multiply_point,
    negate_point,
)
from .weierstrass import (
    ELLIPTIC,
    INVALID,
    QUASI_ELLIPTIC,
    RATIONAL_SURFACE,
    K3Verdict,
    WeierstrassModel,
    discriminant,
    validate_k3,
)
