"""
BIPHOTON DOMAIN TYPES
Decay paths of the cascade source, motional parameters, and the binned
correlation trace every downstream stage consumes.
"""
from dataclasses import dataclass
from typing import Any, List, Optional, Tuple

import numpy as np
import polars as pl
from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator

from ..scheme.constants import (
    D2_LINEWIDTH_MHZ,
    IDLER_NM,
    LOWER_PUMP_NM,
    UPPER_PUMP_NM,
    UPPER_STATE_LINEWIDTH_MHZ,
)
from ..scheme.levels import PumpField
from ..shared.errors import DomainError


class DecayPath(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    center_detuning_mhz: float = 0.0
    amplitude: complex = Field(1.0 + 0.0j, description="Relative coupling product, [re, im] in files")
    linewidth_mhz: float = D2_LINEWIDTH_MHZ

    @field_validator('amplitude', mode='before')
    @classmethod
    def parse_amplitude(cls, v: Any) -> complex:
        if isinstance(v, (list, tuple)):
            if len(v) != 2:
                raise ValueError("amplitude must be [re, im]")
            return complex(float(v[0]), float(v[1]))
        if isinstance(v, (int, float, complex)):
            return complex(v)
        return v

    @field_serializer('amplitude')
    def dump_amplitude(self, v: complex) -> List[float]:
        return [v.real, v.imag]

    @property
    def amplitude_rate(self) -> float:
        """Amplitude decay rate pi * linewidth in 1/us."""
        return np.pi * self.linewidth_mhz


class BiphotonSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    paths: Tuple[DecayPath, ...] = (DecayPath(),)
    upper_linewidth_mhz: float = UPPER_STATE_LINEWIDTH_MHZ
    two_photon_detuning_mhz: float = 0.0
    lower_pump: Optional[PumpField] = None
    upper_pump: Optional[PumpField] = None

    def scaled(self, factor: complex) -> "BiphotonSpec":
        paths = tuple(p.model_copy(update={"amplitude": p.amplitude * factor}) for p in self.paths)
        return self.model_copy(update={"paths": paths})

    def violations(self, path: str) -> List[str]:
        found: List[str] = []
        if not self.paths:
            found.append(f"{path}.paths: at least one decay path required")
        for i, p in enumerate(self.paths):
            if not p.linewidth_mhz > 0:
                found.append(f"{path}.paths[{i}].linewidth_mhz: must be > 0")
            if not np.isfinite(p.amplitude):
                found.append(f"{path}.paths[{i}].amplitude: must be finite")
        if not self.upper_linewidth_mhz > 0:
            found.append(f"{path}.upper_linewidth_mhz: must be > 0")
        if self.lower_pump is not None:
            found.extend(self.lower_pump.violations(f"{path}.lower_pump"))
        if self.upper_pump is not None:
            found.extend(self.upper_pump.violations(f"{path}.upper_pump"))
        return found

    def ensure_valid(self) -> None:
        found = self.violations("source")
        if found:
            raise DomainError("invalid biphoton source", violations=found)


def default_pumps(lower_detuning_mhz: float, upper_detuning_mhz: float) -> Tuple[PumpField, PumpField]:
    return (
        PumpField(detuning_mhz=lower_detuning_mhz, rabi_mhz=30.0, wavelength_nm=LOWER_PUMP_NM),
        PumpField(detuning_mhz=upper_detuning_mhz, rabi_mhz=10.0, wavelength_nm=UPPER_PUMP_NM),
    )


class MotionalParams(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    v_t_mps: float = 0.0
    wavelength_nm: float = Field(IDLER_NM, gt=0)

    @property
    def k_radpm(self) -> float:
        return 2.0 * np.pi / (self.wavelength_nm * 1e-9)

    def violations(self, path: str) -> List[str]:
        if not self.v_t_mps >= 0:
            return [f"{path}.v_t_mps: must be >= 0"]
        return []


# ====================== TRACE ======================

@dataclass(frozen=True)
class CorrelationTrace:
    """Coincidence density integrated per detector bin; delays are bin centres."""
    bin_ns: float
    delays_ns: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if self.delays_ns.shape != self.values.shape or self.values.ndim != 1:
            raise DomainError("delays and values must be 1D of equal length")
        if not self.bin_ns > 0:
            raise DomainError("bin_ns must be > 0", bin_ns=self.bin_ns)
        if self.values.size > 1:
            steps = np.diff(self.delays_ns)
            if not np.allclose(steps, self.bin_ns, rtol=1e-9, atol=1e-9 * self.bin_ns):
                raise DomainError("delays must be uniformly spaced by bin_ns", bin_ns=self.bin_ns)
        if np.any(self.values < 0):
            raise DomainError("trace values must be nonnegative", minimum=float(self.values.min()))

    @property
    def edges_ns(self) -> np.ndarray:
        return np.append(self.delays_ns - 0.5 * self.bin_ns, self.delays_ns[-1] + 0.5 * self.bin_ns)

    @property
    def total(self) -> float:
        return float(np.sum(self.values))

    @property
    def zero_delay_index(self) -> int:
        """Bin whose interval [left, left + bin) contains zero delay."""
        idx = int(np.searchsorted(self.edges_ns, 0.0, side="right")) - 1
        if not 0 <= idx < self.values.size:
            raise DomainError("trace does not cover zero delay")
        return idx

    @property
    def zero_delay_value(self) -> float:
        return float(self.values[self.zero_delay_index])

    def select(self, window_ns: Tuple[float, float]) -> Tuple[np.ndarray, np.ndarray]:
        """Delays and values of bins whose centres fall inside the window."""
        start, end = window_ns
        mask = (self.delays_ns >= start) & (self.delays_ns <= end)
        return self.delays_ns[mask], self.values[mask]

    def to_frame(self) -> pl.DataFrame:
        return pl.DataFrame({"delay_ns": self.delays_ns, "value": self.values})
