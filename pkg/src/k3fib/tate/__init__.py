"""Singular fibers: Tate's algorithm in characteristic 3, quasi-elliptic fibers and minimal models."""

from .algorithm import TateRun, classify_all, classify_place, local_coefficients, run_tate, singular_places
from .fibers import E6_ARMS, Branch, Component, FiberConfiguration, FiberData, arm_branches
from .kodaira import I0, KodairaType
from .minimal import infinity_weight, minimize
from .quasi import classify_quasi, classify_quasi_place, quasi_fiber_type, quasi_places, split_cube
from .sections import component_of_section, local_point
