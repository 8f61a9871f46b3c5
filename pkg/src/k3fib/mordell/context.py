"""Bundle of a model, its fibers and the surface constants heights need."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..model.weierstrass import WeierstrassModel
from ..tate.algorithm import classify_all
from ..tate.fibers import FiberConfiguration


@dataclass(frozen=True)
class HeightContext:
    model: WeierstrassModel
    config: FiberConfiguration
    #: Euler characteristic of the structure sheaf of a K3 surface
    chi: int = 2
    rho: int = 22
    #: Artin invariant
    sigma: int = 1

    @classmethod
    def from_model(cls, m: WeierstrassModel, config: Optional[FiberConfiguration] = None) -> "HeightContext":
        return cls(m, config if config is not None else classify_all(m))

    @property
    def disc_target(self) -> int:
        """Discriminant of NS(X): ``-3^(2 sigma)``."""
        return -(3 ** (2 * self.sigma))
