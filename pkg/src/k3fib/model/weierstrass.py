"""
Weierstrass models ``y^2 = x^3 + a2 x^2 + a4 x + a6`` over F9(t).

In characteristic 3 the b-invariants reduce to ``b2 = a2``, ``b4 = 2 a4``,
``b6 = a6`` and ``b8 = a2 a6 - a4^2``; reducing the integral discriminant
``-b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6`` modulo 3 leaves

    Delta = -a2^3 a6 + a2^2 a4^2 - a4^3.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Tuple, Union

from ..algebra.field import F3, F9, Field
from ..algebra.parse import parse_polynomial
from ..algebra.poly import ZERO_POLY, Polynomial
from ..errors import ModelError, ParseError

logger = logging.getLogger(__name__)

#: K3 degree bounds for (a2, a4, a6)
K3_DEGREE_BOUNDS = (4, 8, 12)

ELLIPTIC = "elliptic"
QUASI_ELLIPTIC = "quasi_elliptic"
RATIONAL_SURFACE = "rational_surface"
INVALID = "invalid"


@dataclass(frozen=True)
class WeierstrassModel:
    a2: Polynomial = ZERO_POLY
    a4: Polynomial = ZERO_POLY
    a6: Polynomial = ZERO_POLY
    field: Field = F9

    def __post_init__(self):
        for name in ("a2", "a4", "a6"):
            value = getattr(self, name)
            if not isinstance(value, Polynomial):
                object.__setattr__(self, name, Polynomial.constant(value) if isinstance(value, int) else value)
        for name in ("a2", "a4", "a6"):
            if not getattr(self, name).in_field(self.field):
                raise ModelError(f"{name} = {getattr(self, name)} has coefficients outside {self.field}")

    @classmethod
    def from_strings(cls, a2: str, a4: str, a6: str, field: Field = F9) -> "WeierstrassModel":
        return cls(parse_polynomial(a2, field), parse_polynomial(a4, field), parse_polynomial(a6, field), field)

    # --- invariants -------------------------------------------------------

    @property
    def coefficients(self) -> Tuple[Polynomial, Polynomial, Polynomial]:
        return self.a2, self.a4, self.a6

    def b_invariants(self) -> Dict[str, Polynomial]:
        return {
            "b2": self.a2,
            "b4": self.a4 * 2,
            "b6": self.a6,
            "b8": self.a2 * self.a6 - self.a4 * self.a4,
        }

    def discriminant(self) -> Polynomial:
        return discriminant(self)

    def is_quasi_elliptic(self) -> bool:
        return not self.discriminant()

    def within_k3_bounds(self) -> bool:
        return all(a.degree <= bound for a, bound in zip(self.coefficients, K3_DEGREE_BOUNDS))

    def cubic(self, x):
        """``x^3 + a2 x^2 + a4 x + a6`` evaluated at ``x``."""
        return ((x + self.a2) * x + self.a4) * x + self.a6

    # --- text format ------------------------------------------------------

    @classmethod
    def from_text(cls, text: str, source: str = "<model>") -> "WeierstrassModel":
        """
        Parse the line-oriented model format::

            field = F9
            a2 = 2*t^3 + 2
            a4 = t^6
            a6 = 0
        """
        values: Dict[str, str] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError(f"expected 'key = value', got {line!r}", line=lineno, source=source)
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in ("field", "a2", "a4", "a6"):
                raise ParseError(f"unknown key {key!r}", line=lineno, source=source)
            if key in values:
                raise ParseError(f"duplicate key {key!r}", line=lineno, source=source)
            values[key] = value
        name = values.get("field", "F9")
        if name not in ("F3", "F9"):
            raise ParseError(f"unknown field {name!r}", source=source)
        fld = F3 if name == "F3" else F9
        try:
            coeffs = [parse_polynomial(values.get(k, "0"), fld) for k in ("a2", "a4", "a6")]
        except ParseError as exc:
            raise ParseError(exc.message, exc.line, source) from None
        return cls(*coeffs, field=fld)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "WeierstrassModel":
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ModelError(f"cannot read {path}: {exc.strerror}") from None
        return cls.from_text(text, source=str(path))

    def to_text(self) -> str:
        return f"field = {self.field}\na2 = {self.a2}\na4 = {self.a4}\na6 = {self.a6}\n"

    def equation(self) -> str:
        terms = ["x^3"]
        for coeff, mono in ((self.a2, "x^2"), (self.a4, "x"), (self.a6, "")):
            if not coeff:
                continue
            text = str(coeff)
            if not mono:
                terms.append(text)
                continue
            if sum(1 for c in coeff.coeffs if c) > 1:
                text = f"({text})"
            terms.append(mono if coeff == 1 else f"{text}*{mono}")
        return "y^2 = " + " + ".join(terms)

    def __str__(self) -> str:
        return self.equation()


def discriminant(m: WeierstrassModel) -> Polynomial:
    a2, a4, a6 = m.coefficients
    a2sq = a2 * a2
    return -(a2sq * a2 * a6) + a2sq * a4 * a4 - a4 * a4 * a4


@dataclass
class K3Verdict:
    kind: str
    reasons: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.kind in (ELLIPTIC, QUASI_ELLIPTIC)

    def __str__(self) -> str:
        return self.kind if not self.reasons else f"{self.kind}: {'; '.join(self.reasons)}"


def validate_k3(m: WeierstrassModel) -> K3Verdict:
    """Classify a model as elliptic/quasi-elliptic K3, rational surface or invalid."""
    reasons: List[str] = []
    for name, coeff, bound in zip(("a2", "a4", "a6"), m.coefficients, K3_DEGREE_BOUNDS):
        if coeff.degree > bound:
            reasons.append(f"deg {name} = {coeff.degree} exceeds {bound}")
    if reasons:
        return K3Verdict(INVALID, reasons)
    delta = m.discriminant()
    if not delta:
        if m.a2 or m.a4:
            return K3Verdict(INVALID, ["discriminant vanishes identically with a2 or a4 nonzero"])
        if not m.a6:
            return K3Verdict(INVALID, ["a6 = 0: the cubic is a perfect cube"])
        if m.a6.cube_root() is not None:
            return K3Verdict(INVALID, ["a6 is a cube in F9[t]: the surface is not normal"])
        if m.a6.degree <= 6:
            return K3Verdict(RATIONAL_SURFACE, ["deg a6 <= 6"])
        return K3Verdict(QUASI_ELLIPTIC)
    if delta.degree == 0:
        return K3Verdict(INVALID, ["no singular fiber: discriminant is a nonzero constant"])
    if all(coeff.degree <= bound // 2 for coeff, bound in zip(m.coefficients, K3_DEGREE_BOUNDS)):
        return K3Verdict(RATIONAL_SURFACE, ["deg a_k <= k for every coefficient"])
    return K3Verdict(ELLIPTIC)
