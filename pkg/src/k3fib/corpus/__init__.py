"""The catalog of 52 fibrations, its reader and the verification harness."""

from .loader import (
    DEFAULT_CORPUS,
    DIVISOR_DIR,
    FIBRATION_COUNT,
    Catalog,
    Derivation,
    ExpectedFiber,
    FiberCorrection,
    FibrationRecord,
    SectionClaim,
    load_corpus,
    load_divisor,
    parse_corpus,
)
from .verify import (
    FIBER_MATCH_THRESHOLD,
    CorpusSummary,
    DerivationResult,
    ErrataEntry,
    SectionResult,
    VerificationReport,
    errata,
    show_record,
    verify_all,
    verify_record,
)
