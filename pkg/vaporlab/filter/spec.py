"""
FILTER DOMAIN TYPES
FilterSpec is configuration; FilterTransmission is the computed
frequency-dependent beamsplitter plus its time-domain kernel.
"""
from dataclasses import dataclass, replace
from typing import List, Literal, Optional

import numpy as np
import polars as pl
from pydantic import BaseModel, ConfigDict, Field

from ..response.driven import DrivenSystemSpec
from ..response.profile import ThermalDistribution
from ..scheme.constants import IDLER_NM
from ..scheme.grid import FrequencyGrid
from ..shared.errors import DomainError

FilterModel = Literal["none", "two_level_doppler", "driven_multilevel"]

PASSIVE_TOLERANCE = 1e-9


class FilterSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    model: FilterModel = "none"
    od: float = Field(0.0, description="Undriven peak intensity optical depth")
    linewidth_mhz: float = Field(6.05, description="Population linewidth of the filter line (MHz)")
    v_t_mps: float = Field(0.0, description="Most probable speed of the filter atoms (m/s)")
    center_detuning_mhz: float = 0.0
    wavelength_nm: float = Field(IDLER_NM, gt=0)
    n_classes: int = 65
    driven: Optional[DrivenSystemSpec] = None

    @property
    def thermal(self) -> ThermalDistribution:
        return ThermalDistribution(v_t_mps=self.v_t_mps, n_classes=self.n_classes)

    def violations(self, path: str) -> List[str]:
        found: List[str] = []
        if not self.od >= 0:
            found.append(f"{path}.od: must be >= 0")
        if self.model != "none" and not self.linewidth_mhz > 0:
            found.append(f"{path}.linewidth_mhz: must be > 0")
        found.extend(self.thermal.violations(path))
        if (self.driven is not None) != (self.model == "driven_multilevel"):
            found.append(f"{path}.driven: present iff model is driven_multilevel")
        if self.driven is not None:
            found.extend(self.driven.violations(f"{path}.driven"))
        return found

    def ensure_valid(self) -> None:
        found = self.violations("filter")
        if found:
            raise DomainError("invalid filter", violations=found)


@dataclass(frozen=True)
class FilterTransmission:
    grid: FrequencyGrid
    model: str
    t_values: np.ndarray
    kernel: Optional[np.ndarray] = None  # FFT order, index 0 is zero delay
    bandwidth_50pct_mhz: float = 0.0

    @property
    def intensity(self) -> np.ndarray:
        return np.abs(self.t_values) ** 2

    @property
    def max_gain(self) -> float:
        return float(np.max(np.abs(self.t_values)))

    @property
    def gain_detected(self) -> bool:
        return self.max_gain > 1.0 + PASSIVE_TOLERANCE

    def with_kernel(self, kernel: np.ndarray) -> "FilterTransmission":
        return replace(self, kernel=kernel)

    def centred_kernel(self) -> np.ndarray:
        if self.kernel is None:
            raise DomainError("kernel not computed", model=self.model)
        return np.fft.fftshift(self.kernel)

    def to_frame(self) -> pl.DataFrame:
        return pl.DataFrame({
            "detuning_mhz": self.grid.detunings_mhz,
            "re_t": self.t_values.real,
            "im_t": self.t_values.imag,
            "intensity_transmission": self.intensity,
        })

    def kernel_frame(self) -> pl.DataFrame:
        kernel = self.centred_kernel()
        return pl.DataFrame({
            "time_ns": self.grid.delays_ns,
            "re_kernel": kernel.real,
            "im_kernel": kernel.imag,
        })
