"""Sections above the lattice layer: heights, torsion and the discriminant identity."""

from .context import HeightContext
from .discriminant import DiscCheck, ns_disc_check
from .heights import correction_terms, height, height_pairing, intersect_with_zero, mwl_gram
from .torsion import DEFAULT_TORSION_BOUND, find_two_torsion, torsion_order
