"""
Verification of catalog records and the errata ledger.

``verify_record`` recomputes everything a record claims: the fiber table,
the Mordell-Weil rank, each section's membership and torsion order, printed
heights, the discriminant identity and, for records with a divisor file, the
neighbor step that produced the record. Disagreements never raise; each one
becomes a single :class:`ErrataEntry` carrying the printed claim, the
computed value and the operation that decided it.
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import CorpusError, K3FibException
from ..lattice.trivial import disc_trivial_signed, shioda_tate_mw_rank
from ..model.points import SurfacePoint, is_on_curve
from ..model.weierstrass import ELLIPTIC, QUASI_ELLIPTIC, validate_k3
from ..mordell.context import HeightContext
from ..mordell.discriminant import ns_disc_check
from ..mordell.heights import height, mwl_gram
from ..mordell.torsion import torsion_order
from ..neighbor.ansatz import pole_order_check
from ..neighbor.derive import neighbor_step
from ..options import VerifyOptions
from ..tate.algorithm import classify_all
from ..tate.fibers import FiberConfiguration
from .loader import FIBRATION_COUNT, Catalog, FibrationRecord, SectionClaim, cached_corpus, load_corpus

logger = logging.getLogger(__name__)

#: fiber tables that must match verbatim across the full catalog
FIBER_MATCH_THRESHOLD = 45

MATCH = "match"
ERRATA = "errata"
ERROR = "error"


@dataclass(frozen=True)
class ErrataEntry:
    record: int
    subject: str
    claim: str
    computed: str
    operation: str
    #: the catalog key that supplies the corrected value, if any
    resolution: Optional[str] = None

    @property
    def resolved(self) -> bool:
        return self.resolution is not None

    def __str__(self) -> str:
        text = f"fibration {self.record}: {self.subject}: printed {self.claim}; computed {self.computed} [{self.operation}]"
        if self.resolution:
            text += f" (corrected by {self.resolution})"
        return text

    def to_dict(self) -> Dict[str, object]:
        return {
            "record": self.record,
            "subject": self.subject,
            "claim": self.claim,
            "computed": self.computed,
            "operation": self.operation,
            "resolution": self.resolution,
        }


@dataclass
class SectionResult:
    index: int
    claim: str
    on_curve: bool
    order: Optional[int] = None
    height: Optional[Fraction] = None
    corrected: bool = False

    def describe(self) -> str:
        if not self.on_curve:
            return f"section {self.index} {self.claim}: not on the curve"
        kind = "non-torsion" if self.order is None else f"order {self.order}"
        text = f"section {self.index} {self.claim}: {kind}"
        if self.height is not None:
            text += f", height {self.height}"
        return text + (" (corrected)" if self.corrected else "")

    def to_dict(self) -> Dict[str, object]:
        return {
            "index": self.index,
            "claim": self.claim,
            "on_curve": self.on_curve,
            "order": self.order,
            "height": None if self.height is None else str(self.height),
            "corrected": self.corrected,
        }


@dataclass
class DerivationResult:
    source: int
    divisor: Optional[str] = None
    parameter: Optional[str] = None
    identified: Optional[bool] = None
    base_change: Optional[str] = None
    poles_ok: Optional[bool] = None
    printed_parameter_ok: Optional[bool] = None

    def describe(self) -> str:
        if self.divisor is None:
            return f"derived from {self.source}: no divisor transcribed, not rerun"
        text = f"derived from {self.source} by {self.divisor}: w = {self.parameter}"
        if self.identified is not None:
            text += f", target {'identified via w -> ' + str(self.base_change) if self.identified else 'NOT identified'}"
        if self.printed_parameter_ok is not None:
            text += f", printed parameter {'ok' if self.printed_parameter_ok else 'refuted'}"
        return text

    def to_dict(self) -> Dict[str, object]:
        return {
            "source": self.source,
            "divisor": self.divisor,
            "parameter": self.parameter,
            "identified": self.identified,
            "base_change": self.base_change,
            "poles_ok": self.poles_ok,
            "printed_parameter_ok": self.printed_parameter_ok,
        }


@dataclass
class VerificationReport:
    record: int
    kind: str = ""
    configuration: Tuple[str, ...] = ()
    fibers: Tuple[str, ...] = ()
    fiber_match: Optional[bool] = None
    place_match: Optional[bool] = None
    v_delta_sum: Optional[int] = None
    mw_rank: Optional[int] = None
    rank_match: Optional[bool] = None
    sections: List[SectionResult] = field(default_factory=list)
    disc: Optional[str] = None
    disc_value: Optional[Fraction] = None
    derivation: Optional[DerivationResult] = None
    errata: List[ErrataEntry] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    errors: List[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.errors:
            return ERROR
        return ERRATA if self.errata else MATCH

    @property
    def ok(self) -> bool:
        return not self.errors

    def resolved(self, subject: str) -> bool:
        """True when every errata entry on ``subject`` has a catalog correction."""
        return all(e.resolved for e in self.errata if e.subject == subject)

    def add_errata(
        self, subject: str, claim: str, computed: str, operation: str, resolution: Optional[str] = None
    ) -> None:
        entry = ErrataEntry(self.record, subject, claim, computed, operation, resolution)
        logger.info("errata: %s", entry)
        self.errata.append(entry)

    def report_lines(self) -> List[str]:
        lines = [f"fibration {self.record}: {self.kind} [{self.status}]"]
        lines.extend(f"  {line}" for line in self.configuration)
        if self.fiber_match is not None:
            places = "" if self.place_match is None else f", places {'match' if self.place_match else 'differ'}"
            lines.append(f"  fibers: {'match' if self.fiber_match else 'MISMATCH'}{places}")
        if self.v_delta_sum is not None:
            lines.append(f"  sum v(Delta) = {self.v_delta_sum}")
        if self.mw_rank is not None:
            verdict = "" if self.rank_match is None else (" (as printed)" if self.rank_match else " (printed rank differs)")
            lines.append(f"  mw_rank = {self.mw_rank}{verdict}")
        lines.extend(f"  {s.describe()}" for s in self.sections)
        if self.disc is not None:
            lines.append(f"  disc(NS): {self.disc}")
        if self.derivation is not None:
            lines.append(f"  {self.derivation.describe()}")
        lines.extend(f"  errata: {e}" for e in self.errata)
        lines.extend(f"  warning: {w}" for w in self.warnings)
        lines.extend(f"  error: {e}" for e in self.errors)
        return lines

    def to_dict(self) -> Dict[str, object]:
        return {
            "record": self.record,
            "kind": self.kind,
            "status": self.status,
            "configuration": list(self.configuration),
            "fibers": list(self.fibers),
            "fiber_match": self.fiber_match,
            "place_match": self.place_match,
            "v_delta_sum": self.v_delta_sum,
            "mw_rank": self.mw_rank,
            "rank_match": self.rank_match,
            "sections": [s.to_dict() for s in self.sections],
            "disc": self.disc,
            "disc_value": None if self.disc_value is None else str(self.disc_value),
            "derivation": None if self.derivation is None else self.derivation.to_dict(),
            "errata": [e.to_dict() for e in self.errata],
            "warnings": list(self.warnings),
            "errors": list(self.errors),
        }


def _located(config: FiberConfiguration) -> str:
    return " ".join(f"{fd.lattice_label}@{fd.place.label}" for fd in config.reducible()) or "none"


def _check_fibers(record: FibrationRecord, config: FiberConfiguration, report: VerificationReport) -> None:
    computed = sorted(config.lattice_labels())
    report.fibers = tuple(computed)
    report.configuration = tuple(config.report_lines())
    if not config.is_quasi_elliptic:
        report.v_delta_sum = config.v_delta_sum
    report.fiber_match = computed == record.fiber_labels()
    if not report.fiber_match:
        effective = sorted(f.label for f in record.effective_fibers())
        resolution = "corrected_fiber" if record.corrected_fibers and effective == computed else None
        printed = " ".join(map(str, record.fibers)) or "none"
        report.add_errata("fibers", printed, _located(config), "classify_all", resolution)
        return

    mismatches = 0
    for printed in record.fibers:
        if printed.place is None:
            continue
        fd = config.at(printed.place)
        if fd is not None and fd.lattice_label == printed.label:
            continue
        mismatches += 1
        where = sorted(f.place.label for f in config.reducible() if f.lattice_label == printed.label)
        fix = record.fiber_correction(printed.place)
        resolution = None
        if fix is not None:
            fixed = config.at(fix.place)
            if fixed is not None and fixed.lattice_label == fix.label:
                resolution = f"corrected_fiber {printed.place.label}"
        report.add_errata(
            f"fiber at {printed.place.label}",
            printed.label,
            f"{printed.label} at {', '.join(where)}",
            "classify_all",
            resolution,
        )
    report.place_match = mismatches == 0


def _check_rank(record: FibrationRecord, config: FiberConfiguration, report: VerificationReport) -> None:
    report.mw_rank = shioda_tate_mw_rank(config)
    if record.mw_rank is not None:
        report.rank_match = report.mw_rank == record.mw_rank
        if not report.rank_match:
            resolution = "corrected_mw_rank" if record.corrected_mw_rank == report.mw_rank else None
            report.add_errata("mw_rank", str(record.mw_rank), str(report.mw_rank), "shioda_tate_mw_rank", resolution)
    if record.trivial_disc is not None:
        computed = disc_trivial_signed(config)
        if abs(computed) != abs(record.trivial_disc):
            report.add_errata("trivial_disc", str(record.trivial_disc), str(computed), "disc_trivial_signed")


def _kind_mismatch(claim: SectionClaim, order: Optional[int]) -> bool:
    if claim.claims_torsion:
        return order != claim.order
    return order is not None


def _order_text(order: Optional[int], bound: int) -> str:
    return f"no torsion up to order {bound}" if order is None else f"torsion of order {order}"


def _check_sections(
    record: FibrationRecord, ctx: HeightContext, options: VerifyOptions, report: VerificationReport
) -> List[SurfacePoint]:
    """Run the section checks; returns the on-curve non-torsion sections."""
    model = ctx.model
    bound = options.torsion_bound
    free: List[SurfacePoint] = []
    for index, printed in enumerate(record.sections, start=1):
        fix = record.section_correction(index)
        claim = fix or printed
        printed_on = is_on_curve(record.model, printed.point)
        if not printed_on:
            resolution = None
            if fix is not None and is_on_curve(model, fix.point):
                resolution = f"corrected_section {index}"
            elif fix is None and record.corrected_model is not None and is_on_curve(model, printed.point):
                resolution = "corrected_a2/a4/a6"
            report.add_errata(f"section {index}", printed.describe(), "not on the curve", "is_on_curve", resolution)
        elif fix is not None and fix.point != printed.point:
            report.warnings.append(f"section {index} is on the curve but carries a correction")

        result = SectionResult(index, claim.describe(), is_on_curve(model, claim.point), corrected=fix is not None)
        report.sections.append(result)
        if not result.on_curve:
            continue
        result.order = torsion_order(ctx, claim.point, bound)
        if _kind_mismatch(claim, result.order):
            report.add_errata(f"section {index}", claim.describe(), _order_text(result.order, bound), "torsion_order")
        if result.order is None:
            free.append(claim.point)

        if options.check_heights and not ctx.config.is_quasi_elliptic:
            try:
                result.height = height(ctx, claim.point)
            except K3FibException as exc:
                report.warnings.append(f"height of section {index} not computed: {exc}")
            else:
                if result.order is not None and result.height != 0:
                    report.warnings.append(f"torsion section {index} has height {result.height}")

    fixes = dict(record.corrected_heights)
    for index, value in record.heights:
        computed = report.sections[index - 1].height
        if computed is None:
            report.warnings.append(f"printed height of section {index} not checked")
            continue
        if computed != value:
            resolution = f"corrected_height {index}" if fixes.get(index) == computed else None
            report.add_errata(f"height {index}", str(value), str(computed), "height", resolution)
    return free


def _check_discriminant(
    record: FibrationRecord, ctx: HeightContext, free: Sequence[SurfacePoint], report: VerificationReport
) -> None:
    if record.torsion is None:
        report.disc = "skipped: torsion order not printed"
        return
    rank = report.mw_rank or 0
    gram = None
    if rank:
        if len(free) != rank:
            report.disc = f"skipped: {len(free)} free sections listed for rank {rank}"
            return
        gram = mwl_gram(ctx, free)
        if gram.det(method="bareiss") == 0:
            report.disc = "skipped: the listed free sections are dependent"
            return
    try:
        check = ns_disc_check(ctx, record.torsion, gram)
    except K3FibException as exc:
        report.disc = f"fail: {exc}"
        report.add_errata("disc(NS)", str(ctx.disc_target), str(exc), "ns_disc_check")
        return
    report.disc_value = check.value
    if check.ok:
        report.disc = f"{check.value} (pass)"
        return
    ratio = check.value / check.target
    if ratio.denominator == 1 and ratio > 0 and isqrt(int(ratio)) ** 2 == ratio:
        report.disc = f"{check.value}: the listed sections span a sublattice of index {isqrt(int(ratio))}"
        return
    report.disc = f"{check.value} (fail)"
    report.add_errata(
        "disc(NS)",
        f"{ctx.disc_target} with torsion of order {record.torsion}",
        str(check.value),
        "ns_disc_check",
    )


def _check_derivation(
    record: FibrationRecord, catalog: Optional[Catalog], options: VerifyOptions, report: VerificationReport
) -> None:
    d = record.derivation
    result = DerivationResult(d.source, d.divisor)
    report.derivation = result
    if d.divisor is None or not options.check_derivations:
        return
    if catalog is None or d.source not in catalog:
        report.warnings.append(f"fibration {d.source} not available; derivation not rerun")
        return
    source = catalog[d.source].effective_model
    F = d.divisor_spec()
    try:
        step = neighbor_step(source, F, record.effective_model, options.allow_base_change)
    except K3FibException as exc:
        report.errors.append(f"neighbor step from fibration {d.source} failed: {exc}")
        return
    result.parameter = str(step.parameter)
    result.identified = step.identification is not None
    result.base_change = None if step.identification is None else step.identification.base_change
    result.poles_ok = None if step.poles is None else step.poles.ok
    if not result.identified:
        report.add_errata(
            "derivation",
            f"derived from fibration {d.source}",
            f"{step.model.equation()} with roots {step.roots}",
            "identify_target",
        )
    expected_ok = True
    if d.expected_w is not None:
        got = (step.parameter.numerator, step.parameter.denominator)
        expected_ok = got == (d.expected_w.numerator, d.expected_w.denominator)
        if not expected_ok:
            report.add_errata("elliptic parameter", str(d.expected_w), str(step.parameter), "solve_pole_conditions")
    if d.printed_w is not None:
        poles = pole_order_check(source, F, d.printed_w, step.source_config)
        result.printed_parameter_ok = poles.ok
        if not poles.ok:
            resolution = "expected_w" if d.expected_w is not None and expected_ok else None
            failures = "; ".join(str(e) for e in poles.failures())
            report.add_errata("printed parameter", str(d.printed_w), failures, "pole_order_check", resolution)


def verify_record(
    record: FibrationRecord, options: Optional[VerifyOptions] = None, catalog: Optional[Catalog] = None
) -> VerificationReport:
    """
    Recompute every claim of ``record``.

    ``catalog`` supplies the source record of a derivation; without it the
    neighbor step is skipped with a warning.
    """
    options = options or VerifyOptions()
    report = VerificationReport(record.id)
    model = record.effective_model
    verdict = validate_k3(model)
    report.kind = verdict.kind
    if not verdict.ok:
        report.errors.append(f"model rejected: {verdict}")
        return report
    try:
        config = classify_all(model)
    except K3FibException as exc:
        report.errors.append(f"classification failed: {exc}")
        return report

    _check_fibers(record, config, report)
    try:
        _check_rank(record, config, report)
    except K3FibException as exc:
        report.errors.append(f"rank accounting failed: {exc}")
        return report
    ctx = HeightContext.from_model(model, config)
    try:
        free = _check_sections(record, ctx, options, report)
    except K3FibException as exc:
        report.errors.append(f"section checks failed: {exc}")
        return report
    if options.check_discriminant:
        try:
            _check_discriminant(record, ctx, free, report)
        except K3FibException as exc:
            report.warnings.append(f"discriminant identity not evaluated: {exc}")
    if record.derivation is not None:
        _check_derivation(record, catalog, options, report)
    logger.debug("fibration %d: %s with %d errata", record.id, report.status, len(report.errata))
    return report


def _verify_in_worker(path: str, record_id: int, options: VerifyOptions) -> VerificationReport:
    catalog = cached_corpus(path)
    return verify_record(catalog[record_id], options, catalog)


@dataclass(frozen=True)
class CorpusSummary:
    reports: Tuple[VerificationReport, ...]

    @property
    def total(self) -> int:
        return len(self.reports)

    def _count(self, predicate) -> int:
        return sum(1 for r in self.reports if predicate(r))

    @property
    def elliptic(self) -> int:
        return self._count(lambda r: r.kind == ELLIPTIC)

    @property
    def quasi_elliptic(self) -> int:
        return self._count(lambda r: r.kind == QUASI_ELLIPTIC)

    @property
    def fiber_matches(self) -> int:
        return self._count(lambda r: r.fiber_match)

    @property
    def exact_matches(self) -> int:
        """Fiber tables matching in lattice labels and in every printed place."""
        return self._count(lambda r: r.fiber_match and r.place_match is not False)

    @property
    def v_delta_ok(self) -> int:
        return self._count(lambda r: r.kind == ELLIPTIC and r.v_delta_sum == 24)

    @property
    def rank_failures(self) -> List[int]:
        """
        Records whose fiber table matches but whose printed rank does not,
        with no ``corrected_mw_rank`` accounting for the difference.
        """
        return [
            r.record
            for r in self.reports
            if r.fiber_match and r.rank_match is False and not r.resolved("mw_rank")
        ]

    @property
    def errors(self) -> List[int]:
        return [r.record for r in self.reports if not r.ok]

    def errata(self) -> List[ErrataEntry]:
        return [e for r in self.reports for e in r.errata]

    @property
    def ok(self) -> bool:
        if self.errors or self.rank_failures or self.v_delta_ok != self.elliptic:
            return False
        return self.total < FIBRATION_COUNT or self.fiber_matches >= FIBER_MATCH_THRESHOLD

    def counts(self) -> Dict[str, int]:
        statuses = Counter(r.status for r in self.reports)
        return {
            "records": self.total,
            "elliptic": self.elliptic,
            "quasi_elliptic": self.quasi_elliptic,
            "fiber_matches": self.fiber_matches,
            "exact_matches": self.exact_matches,
            "v_delta_24": self.v_delta_ok,
            "match": statuses[MATCH],
            "errata_records": statuses[ERRATA],
            "errors": statuses[ERROR],
            "errata_entries": len(self.errata()),
            "unresolved_errata": sum(1 for e in self.errata() if not e.resolved),
        }

    def report_lines(self) -> List[str]:
        lines = []
        for r in self.reports:
            lines.extend(r.report_lines())
        counts = self.counts()
        lines.append(
            f"summary: {counts['records']} records, {counts['fiber_matches']} fiber tables match "
            f"({counts['exact_matches']} with places), {counts['v_delta_24']}/{counts['elliptic']} elliptic "
            f"with sum v(Delta) = 24, {counts['errata_entries']} errata "
            f"({counts['unresolved_errata']} unresolved), {counts['errors']} errors: {'PASS' if self.ok else 'FAIL'}"
        )
        return lines

    def to_dict(self) -> Dict[str, object]:
        return {
            "ok": self.ok,
            "counts": self.counts(),
            "rank_failures": self.rank_failures,
            "reports": [r.to_dict() for r in self.reports],
        }


def verify_all(
    catalog: Optional[Catalog] = None,
    options: Optional[VerifyOptions] = None,
    ids: Optional[Sequence[int]] = None,
) -> CorpusSummary:
    """
    Verify ``ids`` (every record by default), in worker processes when
    ``options.jobs > 1``. Reports come back ordered by record id.
    """
    options = options or VerifyOptions()
    catalog = catalog if catalog is not None else load_corpus()
    wanted = sorted(ids) if ids is not None else sorted(catalog.ids())
    missing = [i for i in wanted if i not in catalog]
    if missing:
        raise CorpusError(f"no fibration {missing[0]} in {catalog.source}")
    reloadable = Path(catalog.source).is_file()
    if options.jobs > 1 and len(wanted) > 1 and reloadable:
        logger.info("verifying %d records with %d workers", len(wanted), options.jobs)
        n = len(wanted)
        with ProcessPoolExecutor(max_workers=options.jobs) as executor:
            reports = list(executor.map(_verify_in_worker, [catalog.source] * n, wanted, [options] * n))
    else:
        if options.jobs > 1 and not reloadable:
            logger.warning("catalog %s cannot be reloaded by workers; verifying sequentially", catalog.source)
        reports = [verify_record(catalog[i], options, catalog) for i in wanted]
    reports.sort(key=lambda r: r.record)
    return CorpusSummary(tuple(reports))


def errata(summary: Optional[CorpusSummary] = None, options: Optional[VerifyOptions] = None) -> List[ErrataEntry]:
    """The errata ledger of ``summary``, verifying the packaged catalog when none is given."""
    if summary is None:
        summary = verify_all(options=options)
    return summary.errata()


def show_record(record: FibrationRecord, catalog: Optional[Catalog] = None) -> List[str]:
    """The record as transcribed, with its corrections and derivation."""
    lines = [f"{record.title}: {record.model.equation()}"]
    if record.corrected_model is not None:
        lines.append(f"  corrected model: {record.corrected_model.equation()}")
    for f in record.fibers:
        fix = record.fiber_correction(f.place) if f.place is not None else None
        moved = f"  (corrected: {fix.label} at {fix.place.label})" if fix is not None else ""
        lines.append(f"  fiber {f.label} at {'?' if f.place is None else f.place.label}{moved}")
    for index, claim in enumerate(record.sections, start=1):
        fix = record.section_correction(index)
        lines.append(f"  section {index}: {claim.describe()}" + (f"  (corrected: {fix.describe()})" if fix else ""))
    fixes = dict(record.corrected_heights)
    for index, value in record.heights:
        lines.append(f"  height of section {index}: {value}" + (f"  (corrected: {fixes[index]})" if index in fixes else ""))
    for key in ("mw_rank", "torsion", "trivial_disc"):
        value = getattr(record, key)
        if value is not None:
            fixed = record.corrected_mw_rank if key == "mw_rank" else None
            lines.append(f"  {key}: {value}" + (f"  (corrected: {fixed})" if fixed is not None else ""))
    d = record.derivation
    if d is not None:
        lines.append(f"  derived from fibration {d.source}" + (f" by {d.divisor}" if d.divisor else ""))
        if catalog is not None and d.source in catalog:
            lines.append(f"    source: {catalog[d.source].model.equation()}")
        if d.divisor is not None:
            lines.append(f"    F = {d.divisor_spec()}")
        if d.expected_w is not None:
            lines.append(f"    w = {d.expected_w}")
        if d.printed_w is not None:
            lines.append(f"    printed w = {d.printed_w}")
    lines.extend(f"  note: {note}" for note in record.notes)
    return lines
