"""Root lattices, height corrections, Niemeier tables and Shioda-Tate accounting."""

from .contributions import contribution
from .gram import dynkin_edges, family_det, gram, gram_det, system_det, system_gram
from .niemeier import (
    EXTRACTION_SOURCES,
    NIEMEIER_TEXT,
    PRINTED_ROWS,
    ExtractionRow,
    a2_complement,
    a2sq_complement,
    contains_a2,
    contains_a2sq,
    enumerate_fibration_lattices,
    extractions,
    iterated_complement,
    niemeier_roots,
    printed_discrepancies,
)
from .roots import EMPTY, RootLabel, RootSystem, parse_factors
from .trivial import RHO, disc_trivial_signed, fiber_roots, shioda_tate_mw_rank, trivial_lattice
