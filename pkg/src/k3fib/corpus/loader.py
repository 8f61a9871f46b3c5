"""
Reader for the fibration catalog.

The catalog is a sequence of ``[fibration N]`` blocks of ``key = value``
lines. Most keys repeat (``fiber``, ``section``, ``note``), so the file is
read line by line rather than through ``configparser``; every error carries
the file name and line number.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple, Union

from ..algebra.field import F3, F9, Field
from ..algebra.parse import parse_polynomial
from ..algebra.place import Place
from ..errors import CorpusError, K3FibException, ParseError
from ..lattice.roots import RootLabel
from ..model.points import SurfacePoint
from ..model.weierstrass import WeierstrassModel
from ..neighbor.ansatz import EllipticParameter
from ..neighbor.divisor import DivisorSpec

logger = logging.getLogger(__name__)

FIBRATION_COUNT = 52

DATA_DIR = Path(__file__).resolve().parent / "data"
DEFAULT_CORPUS = DATA_DIR / "fibrations.cfg"
DIVISOR_DIR = DATA_DIR / "divisors"

TORSION = "torsion"
NON_TORSION = "non-torsion"

_HEADER = re.compile(r"^\[fibration\s+(\d+)\]$")
_KIND = re.compile(r"^(torsion)\((\d+)\)$|^(non-torsion)$")

_SINGLE_KEYS = (
    "a2", "a4", "a6", "field", "mw_rank", "torsion", "trivial_disc", "derived_from",
    "printed_w", "expected_w", "corrected_a2", "corrected_a4", "corrected_a6", "corrected_mw_rank",
)
_REPEATED_KEYS = ("fiber", "section", "height", "corrected_fiber", "corrected_section", "corrected_height", "note")


@dataclass(frozen=True)
class ExpectedFiber:
    """A printed fiber; ``place`` is ``None`` when the catalog does not print it."""

    place: Optional[Place]
    label: str

    def __str__(self) -> str:
        return f"{self.label}@{'?' if self.place is None else self.place.label}"


@dataclass(frozen=True)
class SectionClaim:
    kind: str
    order: Optional[int]
    point: SurfacePoint
    text: str

    @property
    def claims_torsion(self) -> bool:
        return self.kind == TORSION

    def describe(self) -> str:
        kind = f"torsion({self.order})" if self.claims_torsion else NON_TORSION
        return f"{kind} {self.text}"


@dataclass(frozen=True)
class FiberCorrection:
    printed_place: Place
    place: Place
    label: str


@dataclass(frozen=True)
class Derivation:
    source: int
    divisor: Optional[str] = None
    expected_w: Optional[EllipticParameter] = None
    printed_w: Optional[EllipticParameter] = None

    def divisor_spec(self) -> Optional[DivisorSpec]:
        if self.divisor is None:
            return None
        return load_divisor(self.divisor)


@dataclass(frozen=True)
class FibrationRecord:
    id: int
    model: WeierstrassModel
    fibers: Tuple[ExpectedFiber, ...] = ()
    sections: Tuple[SectionClaim, ...] = ()
    mw_rank: Optional[int] = None
    torsion: Optional[int] = None
    trivial_disc: Optional[int] = None
    heights: Tuple[Tuple[int, Fraction], ...] = ()
    derivation: Optional[Derivation] = None
    corrected_model: Optional[WeierstrassModel] = None
    corrected_fibers: Tuple[FiberCorrection, ...] = ()
    corrected_sections: Tuple[Tuple[int, SectionClaim], ...] = ()
    corrected_heights: Tuple[Tuple[int, Fraction], ...] = ()
    corrected_mw_rank: Optional[int] = None
    notes: Tuple[str, ...] = ()
    line: Optional[int] = None

    @property
    def is_quasi_elliptic(self) -> bool:
        return self.model.is_quasi_elliptic()

    @property
    def effective_model(self) -> WeierstrassModel:
        return self.corrected_model or self.model

    def effective_fibers(self) -> Tuple[ExpectedFiber, ...]:
        fixes = {c.printed_place: ExpectedFiber(c.place, c.label) for c in self.corrected_fibers}
        return tuple(fixes.get(f.place, f) if f.place is not None else f for f in self.fibers)

    def fiber_correction(self, place: Optional[Place]) -> Optional[FiberCorrection]:
        for fix in self.corrected_fibers:
            if fix.printed_place == place:
                return fix
        return None

    def section_correction(self, index: int) -> Optional[SectionClaim]:
        return dict(self.corrected_sections).get(index)

    def effective_sections(self) -> Tuple[SectionClaim, ...]:
        """Printed sections with corrected ones substituted; indices are 1-based."""
        fixes = dict(self.corrected_sections)
        return tuple(fixes.get(i, claim) for i, claim in enumerate(self.sections, start=1))

    def fiber_labels(self) -> List[str]:
        return sorted(f.label for f in self.fibers)

    @property
    def title(self) -> str:
        return f"Fibration {self.id}"


class Catalog:
    """Records by id, in file order."""

    def __init__(self, records: List[FibrationRecord], source: str = "<corpus>"):
        self.source = source
        self._records: Dict[int, FibrationRecord] = {}
        for rec in records:
            if rec.id in self._records:
                raise CorpusError(f"{source}:{rec.line}: duplicate fibration id {rec.id}")
            self._records[rec.id] = rec

    def __iter__(self) -> Iterator[FibrationRecord]:
        return iter(self._records.values())

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, record_id: int) -> bool:
        return record_id in self._records

    def __getitem__(self, record_id: int) -> FibrationRecord:
        try:
            return self._records[record_id]
        except KeyError:
            raise CorpusError(f"no fibration {record_id} in {self.source}") from None

    def ids(self) -> List[int]:
        return list(self._records)


def load_divisor(name: str) -> DivisorSpec:
    """A divisor file shipped with the catalog, by file name."""
    path = DIVISOR_DIR / name
    if not path.is_file():
        raise CorpusError(f"unknown divisor file {name!r}")
    return DivisorSpec.from_file(path)


def _field(name: str) -> Field:
    if name not in ("F3", "F9"):
        raise ParseError(f"unknown field {name!r}")
    return F3 if name == "F3" else F9


def _int(value: str, key: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{key} must be an integer, got {value!r}") from None


def _fraction(value: str, key: str) -> Fraction:
    try:
        return Fraction(value)
    except ValueError:
        raise ParseError(f"{key} must be a rational number, got {value!r}") from None


def _label(text: str) -> str:
    return str(RootLabel.parse(text))


def _place(text: str) -> Optional[Place]:
    return None if text == "?" else Place.parse(text)


def _section(text: str, fld: Field) -> SectionClaim:
    kind_text, _, point_text = text.partition(" ")
    match = _KIND.match(kind_text)
    if match is None or not point_text.strip():
        raise ParseError(f"expected 'torsion(n) <point>' or 'non-torsion <point>', got {text!r}")
    point_text = point_text.strip()
    point = SurfacePoint.parse(point_text, fld)
    if match.group(1):
        return SectionClaim(TORSION, int(match.group(2)), point, point_text)
    return SectionClaim(NON_TORSION, None, point, point_text)


def _indexed(value: str, key: str) -> Tuple[int, str]:
    head, _, rest = value.partition(" ")
    if not rest.strip():
        raise ParseError(f"{key} needs an index and a value, got {value!r}")
    return _int(head, key), rest.strip()


class _Block:
    def __init__(self, record_id: int, line: int):
        self.id = record_id
        self.line = line
        self.single: Dict[str, Tuple[str, int]] = {}
        self.repeated: Dict[str, List[Tuple[str, int]]] = {k: [] for k in _REPEATED_KEYS}

    def add(self, key: str, value: str, lineno: int) -> None:
        if key in self.repeated:
            self.repeated[key].append((value, lineno))
        elif key in _SINGLE_KEYS:
            if key in self.single:
                raise ParseError(f"duplicate key {key!r} in fibration {self.id}", lineno)
            self.single[key] = (value, lineno)
        else:
            raise ParseError(f"unknown key {key!r}", lineno)

    def build(self) -> FibrationRecord:
        fld = F9
        if "field" in self.single:
            value, lineno = self.single["field"]
            fld = _guard(lambda: _field(value), lineno)
        for key in ("a2", "a4", "a6"):
            if key not in self.single:
                raise ParseError(f"fibration {self.id} has no {key}", self.line)
        coeffs = [self._poly(key, fld) for key in ("a2", "a4", "a6")]
        model = _guard(lambda: WeierstrassModel(*coeffs, field=fld), self.single["a2"][1])

        corrected_model = None
        fixes = [k for k in ("corrected_a2", "corrected_a4", "corrected_a6") if k in self.single]
        if fixes:
            if len(fixes) != 3:
                raise ParseError(f"fibration {self.id} corrects only {', '.join(fixes)}", self.line)
            fixed = [self._poly(k, fld) for k in ("corrected_a2", "corrected_a4", "corrected_a6")]
            corrected_model = _guard(lambda: WeierstrassModel(*fixed, field=fld), self.single["corrected_a2"][1])

        fibers = []
        for value, lineno in self.repeated["fiber"]:
            parts = value.split()
            if len(parts) != 2:
                raise ParseError(f"expected 'fiber = <place> <label>', got {value!r}", lineno)
            fibers.append(_guard(lambda: ExpectedFiber(_place(parts[0]), _label(parts[1])), lineno))

        sections = [_guard(lambda: _section(v, fld), n) for v, n in self.repeated["section"]]

        corrected_fibers = []
        for value, lineno in self.repeated["corrected_fiber"]:
            parts = value.split()
            if len(parts) != 3:
                raise ParseError(f"expected 'corrected_fiber = <printed place> <place> <label>', got {value!r}", lineno)
            fix = _guard(lambda: FiberCorrection(Place.parse(parts[0]), Place.parse(parts[1]), _label(parts[2])), lineno)
            if not any(f.place == fix.printed_place for f in fibers):
                raise ParseError(f"no printed fiber at {fix.printed_place} to correct", lineno)
            corrected_fibers.append(fix)

        corrected_sections = []
        for value, lineno in self.repeated["corrected_section"]:
            index, rest = _guard(lambda: _indexed(value, "corrected_section"), lineno)
            self._check_index(index, len(sections), lineno)
            corrected_sections.append((index, _guard(lambda: _section(rest, fld), lineno)))

        heights = self._heights("height", len(sections))
        corrected_heights = self._heights("corrected_height", len(sections))

        derivation = None
        if "derived_from" in self.single:
            derivation = self._derivation(fld)
        elif "expected_w" in self.single or "printed_w" in self.single:
            raise ParseError(f"fibration {self.id} has a parameter but no derived_from", self.line)

        return FibrationRecord(
            id=self.id,
            model=model,
            fibers=tuple(fibers),
            sections=tuple(sections),
            mw_rank=self._optional_int("mw_rank"),
            torsion=self._optional_int("torsion"),
            trivial_disc=self._optional_int("trivial_disc"),
            heights=heights,
            derivation=derivation,
            corrected_model=corrected_model,
            corrected_fibers=tuple(corrected_fibers),
            corrected_sections=tuple(corrected_sections),
            corrected_heights=corrected_heights,
            corrected_mw_rank=self._optional_int("corrected_mw_rank"),
            notes=tuple(v for v, _ in self.repeated["note"]),
            line=self.line,
        )

    def _poly(self, key: str, fld: Field):
        value, lineno = self.single[key]
        return _guard(lambda: parse_polynomial(value, fld), lineno)

    def _optional_int(self, key: str) -> Optional[int]:
        if key not in self.single:
            return None
        value, lineno = self.single[key]
        return _guard(lambda: _int(value, key), lineno)

    def _check_index(self, index: int, count: int, lineno: int) -> None:
        if not 1 <= index <= count:
            raise ParseError(f"section index {index} outside 1..{count}", lineno)

    def _heights(self, key: str, count: int) -> Tuple[Tuple[int, Fraction], ...]:
        out = []
        for value, lineno in self.repeated[key]:
            index, rest = _guard(lambda: _indexed(value, key), lineno)
            self._check_index(index, count, lineno)
            out.append((index, _guard(lambda: _fraction(rest, key), lineno)))
        return tuple(out)

    def _derivation(self, fld: Field) -> Derivation:
        value, lineno = self.single["derived_from"]
        parts = value.split()
        if not 1 <= len(parts) <= 2:
            raise ParseError(f"expected 'derived_from = <id> [<divisor file>]', got {value!r}", lineno)
        source = _guard(lambda: _int(parts[0], "derived_from"), lineno)
        divisor = parts[1] if len(parts) == 2 else None
        if divisor is not None and not (DIVISOR_DIR / divisor).is_file():
            raise ParseError(f"unknown divisor file {divisor!r}", lineno)
        params = {}
        for key in ("expected_w", "printed_w"):
            if key in self.single:
                text, n = self.single[key]
                params[key] = _guard(lambda: EllipticParameter.parse(text, fld), n)
        return Derivation(source, divisor, params.get("expected_w"), params.get("printed_w"))


def _guard(build, lineno: int):
    """Run ``build`` and attach ``lineno`` to any parse or model error it raises."""
    try:
        return build()
    except ParseError as exc:
        if exc.line is not None:
            raise
        raise ParseError(exc.message, lineno) from None
    except K3FibException as exc:
        raise ParseError(str(exc), lineno) from None


def parse_corpus(text: str, source: str = "<corpus>", expected: Optional[int] = FIBRATION_COUNT) -> Catalog:
    """
    Parse catalog text.

    Args:
        text: The catalog contents.
        source: Name used in error messages.
        expected: Required number of records, or ``None`` for any number.

    Raises:
        ParseError: malformed line, with its line number.
        CorpusError: duplicate ids, dangling derivations or a wrong record count.
    """
    blocks: List[_Block] = []
    current: Optional[_Block] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        header = _HEADER.match(line)
        if header:
            current = _Block(int(header.group(1)), lineno)
            blocks.append(current)
            continue
        if line.startswith("["):
            raise ParseError(f"malformed header {line!r}", lineno, source)
        if current is None:
            raise ParseError("key outside a [fibration N] block", lineno, source)
        key, sep, value = line.partition("=")
        if not sep or not value.strip():
            raise ParseError(f"expected 'key = value', got {line!r}", lineno, source)
        try:
            current.add(key.strip(), value.strip(), lineno)
        except ParseError as exc:
            raise ParseError(exc.message, exc.line, source) from None

    records = []
    for block in blocks:
        try:
            records.append(block.build())
        except ParseError as exc:
            raise ParseError(exc.message, exc.line, source) from None

    catalog = Catalog(records, source)
    for rec in catalog:
        if rec.derivation is not None and rec.derivation.source not in catalog:
            raise CorpusError(f"{source}:{rec.line}: fibration {rec.id} derives from unknown fibration {rec.derivation.source}")
    if expected is not None and len(catalog) != expected:
        raise CorpusError(f"{source}: expected {expected} fibrations, found {len(catalog)}")
    logger.debug("loaded %d fibrations from %s", len(catalog), source)
    return catalog


def load_corpus(path: Union[str, Path, None] = None, expected: Optional[int] = FIBRATION_COUNT) -> Catalog:
    """Load the catalog at ``path``, the packaged one by default."""
    path = Path(path) if path is not None else DEFAULT_CORPUS
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc.strerror}") from None
    return parse_corpus(text, source=str(path), expected=expected)


@lru_cache(maxsize=4)
def cached_corpus(path: Optional[str] = None) -> Catalog:
    """``load_corpus`` memoized per process, for worker processes."""
    return load_corpus(path, expected=None)
