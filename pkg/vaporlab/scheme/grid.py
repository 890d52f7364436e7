"""
FREQUENCY GRID
Shared discretization of the detuning axis and its conjugate delay axis.
Interface frequencies are MHz, times are ns or us as the name says.
"""
from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

MIN_POINTS = 2 ** 14


class FrequencyGrid(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    span_mhz: float = Field(16384.0, description="Two-sided extent of the detuning axis (MHz)")
    n_points: int = Field(2 ** 17, description="Number of samples, a power of two")

    # ========== DERIVED AXES ==========

    @property
    def resolution_mhz(self) -> float:
        return self.span_mhz / self.n_points

    @property
    def dt_us(self) -> float:
        return 1.0 / self.span_mhz

    @property
    def dt_ns(self) -> float:
        return 1e3 / self.span_mhz

    @property
    def window_us(self) -> float:
        return self.n_points / self.span_mhz

    @property
    def detunings_mhz(self) -> np.ndarray:
        """Centred axis, index n_points/2 is zero detuning."""
        return (np.arange(self.n_points) - self.n_points // 2) * self.resolution_mhz

    @property
    def delays_ns(self) -> np.ndarray:
        """Centred delay axis matching fftshift ordering."""
        return (np.arange(self.n_points) - self.n_points // 2) * self.dt_ns

    @property
    def fft_delays_ns(self) -> np.ndarray:
        """Delay of each sample in FFT order (index 0 is zero delay)."""
        return np.fft.ifftshift(self.delays_ns)

    @property
    def center_index(self) -> int:
        return self.n_points // 2

    # ========== VALIDATION ==========

    def violations(self, path: str = "grid") -> List[str]:
        found: List[str] = []
        n = self.n_points
        if n < MIN_POINTS or n & (n - 1):
            found.append(f"{path}.n_points: {n} must be a power of two >= {MIN_POINTS}")
        if not self.span_mhz > 0:
            found.append(f"{path}.span_mhz: {self.span_mhz} must be > 0")
        return found

    def same_as(self, other: "FrequencyGrid") -> bool:
        return self.span_mhz == other.span_mhz and self.n_points == other.n_points
