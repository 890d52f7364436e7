"""
SUSCEPTIBILITY PROFILE
Complex linear response sampled on a FrequencyGrid, plus the thermal
velocity distribution it is averaged over.
"""
from dataclasses import dataclass
from typing import List

import numpy as np
import polars as pl
from pydantic import BaseModel, ConfigDict, Field

from ..scheme.grid import FrequencyGrid
from ..shared.errors import DomainError, GridMismatchError


class ThermalDistribution(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    v_t_mps: float = Field(0.0, description="Most probable 1D speed (m/s)")
    n_classes: int = Field(65, description="Velocity cells, odd")

    def violations(self, path: str) -> List[str]:
        found: List[str] = []
        if not self.v_t_mps >= 0:
            found.append(f"{path}.v_t_mps: must be >= 0")
        if self.n_classes < 1 or self.n_classes % 2 == 0:
            found.append(f"{path}.n_classes: {self.n_classes} must be odd and >= 1")
        return found


@dataclass(frozen=True)
class SusceptibilityProfile:
    """chi(nu) per grid point, units 1/MHz (a two-level line peaks at 2/linewidth)."""
    grid: FrequencyGrid
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.grid.n_points,):
            raise GridMismatchError(
                "profile length does not match grid",
                n_values=int(self.values.size),
                n_points=self.grid.n_points,
            )
        if not np.all(np.isfinite(self.values)):
            raise DomainError("profile contains non-finite values", n_bad=int(np.sum(~np.isfinite(self.values))))
        self.values.setflags(write=False)

    @property
    def absorption(self) -> np.ndarray:
        """-Re chi, positive for an absorbing medium."""
        return -self.values.real

    def to_frame(self) -> pl.DataFrame:
        return pl.DataFrame({
            "detuning_mhz": self.grid.detunings_mhz,
            "re_chi": self.values.real,
            "im_chi": self.values.imag,
        })
