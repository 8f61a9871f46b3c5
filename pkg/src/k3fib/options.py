"""
Run-time options for verification and neighbor steps.

``VerifyOptions`` holds plain attributes with defaults, plus preset methods
that switch a group of them at once.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Dict, Mapping

from .algebra.field import F3, F9, Field
from .errors import K3FibException


@dataclass
class VerifyOptions:
    #: working field, ``"F9"`` or ``"F3"``
    field: str = "F9"
    #: largest n tried by torsion_order
    torsion_bound: int = 12
    #: degree cap for polynomial 2-torsion abscissae
    two_torsion_degree: int = 4
    #: worker processes for corpus verification
    jobs: int = 1
    check_heights: bool = True
    check_discriminant: bool = True
    #: rerun the neighbor step of every record with a divisor file
    check_derivations: bool = True
    #: allow t -> a*t + b when identifying a derived model with its target
    allow_base_change: bool = True

    def __post_init__(self):
        if self.field not in ("F3", "F9"):
            raise K3FibException(f"field must be F3 or F9, got {self.field!r}")
        if self.torsion_bound < 1:
            raise K3FibException("torsion_bound must be positive")
        if self.jobs < 1:
            raise K3FibException("jobs must be at least 1")

    @property
    def base_field(self) -> Field:
        return F3 if self.field == "F3" else F9

    @classmethod
    def fast(cls) -> "VerifyOptions":
        """Skip heights, the discriminant identity and neighbor steps."""
        return cls(check_heights=False, check_discriminant=False, check_derivations=False)

    @classmethod
    def strict(cls) -> "VerifyOptions":
        """Larger torsion search and no base change during identification."""
        return cls(torsion_bound=24, allow_base_change=False)

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> "VerifyOptions":
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in values.items() if k in known and v is not None})

    def with_(self, **changes: Any) -> "VerifyOptions":
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
