"""
ANALYSIS RESULT TYPES
Plain frozen records with to_dict() for JSON reports.
"""
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import polars as pl

from ..biphoton.spec import CorrelationTrace

BEAT_PARAMS = ("y0", "a1", "a2", "f_mhz", "phi_rad", "tau_ns")


@dataclass(frozen=True)
class FitResult:
    y0: float
    a1: float
    a2: float
    f_mhz: float
    phi_rad: float
    tau_ns: float
    param_uncertainties: Dict[str, float]
    reduced_chi2: float
    converged: bool
    n_iterations: int
    window_ns: Tuple[float, float] = (0.0, 0.0)
    weights: str = "uniform"

    @property
    def params(self) -> Tuple[float, ...]:
        return tuple(getattr(self, name) for name in BEAT_PARAMS)

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out["window_ns"] = list(self.window_ns)
        return out


@dataclass(frozen=True)
class MotionalFitResult:
    v_t_mps: float
    v_t_uncertainty_mps: float
    reduced_chi2: float
    converged: bool
    n_iterations: int
    natural_tau_ns: float
    params: Dict[str, float] = field(default_factory=dict)
    param_uncertainties: Dict[str, float] = field(default_factory=dict)
    window_ns: Tuple[float, float] = (0.0, 0.0)

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out["window_ns"] = list(self.window_ns)
        return out


@dataclass(frozen=True)
class BeatSpectrum:
    freqs_mhz: np.ndarray
    power: np.ndarray
    peak_freq_mhz: float
    peak_power: float

    @property
    def resolution_mhz(self) -> float:
        return float(self.freqs_mhz[1] - self.freqs_mhz[0])

    def power_at(self, freq_mhz: float) -> float:
        return float(self.power[int(np.argmin(np.abs(self.freqs_mhz - freq_mhz)))])

    def to_frame(self) -> pl.DataFrame:
        return pl.DataFrame({"freq_mhz": self.freqs_mhz, "power": self.power})


@dataclass(frozen=True)
class ScanPoint:
    value: float
    metric: Optional[float]
    od: Optional[float] = None
    reachable: bool = True
    trace: Optional[CorrelationTrace] = None


@dataclass(frozen=True)
class ScanCurve:
    kind: str
    base: str
    points: List[ScanPoint]
    source_absorption_width_mhz: Optional[float] = None

    @property
    def values(self) -> List[float]:
        return [p.value for p in self.points]

    @property
    def metrics(self) -> List[Optional[float]]:
        return [p.metric for p in self.points]

    @property
    def biphoton_bandwidth_mhz(self) -> Optional[float]:
        """
        Filter-width scans: how far past each source absorption edge the
        detected idler spectrum reaches, read off the curve as half the
        extra width needed to halve the unfiltered zero-delay coincidences.
        None unless the scan holds width 0 and crosses 50%.
        """
        if self.kind != "filter_width" or self.source_absorption_width_mhz is None:
            return None
        curve = sorted((p.value, p.metric) for p in self.points if p.reachable and p.metric is not None)
        if not curve or curve[0][0] != 0.0:
            return None
        half = 0.5 * curve[0][1]
        for (w0, m0), (w1, m1) in zip(curve, curve[1:]):
            if m0 > half >= m1:
                crossing = w0 + (m0 - half) * (w1 - w0) / (m0 - m1)
                return 0.5 * (crossing - self.source_absorption_width_mhz)
        return None

    def to_frame(self) -> pl.DataFrame:
        return pl.DataFrame(
            {
                "value": [p.value for p in self.points],
                "metric": [p.metric for p in self.points],
                "od": [p.od for p in self.points],
                "reachable": [p.reachable for p in self.points],
            },
            schema={"value": pl.Float64, "metric": pl.Float64, "od": pl.Float64, "reachable": pl.Boolean},
        )
