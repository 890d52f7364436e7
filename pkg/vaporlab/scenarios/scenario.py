"""
SCENARIO RECORD
One immutable bundle of everything a run needs. Field names are the
config-file keys.
"""
import math
from typing import Any, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from ..biphoton.spec import BiphotonSpec, MotionalParams
from ..filter.spec import FilterSpec
from ..scheme.grid import FrequencyGrid
from ..scheme.levels import BeamGeometry


class ScanPlan(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    kind: Literal["od", "density", "filter_width"]
    values: Tuple[float, ...]
    od_cap: float = Field(50.0, description="Largest extra-cell optical depth a filter-width scan may use")


class Scenario(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    name: str
    description: str = ""
    grid: FrequencyGrid = FrequencyGrid()
    source: BiphotonSpec = BiphotonSpec()
    filter: FilterSpec = FilterSpec()
    filter_cell: Optional[FilterSpec] = None
    motional: MotionalParams = MotionalParams()
    geometry: BeamGeometry = BeamGeometry()
    detector_bin_ns: float = 1.0
    fit_window_ns: Tuple[float, float] = (3.0, 45.0)
    beat_window_ns: Tuple[float, float] = (3.0, 259.0)
    trace_window_ns: Tuple[float, float] = (-20.0, 400.0)
    scan: Optional[ScanPlan] = None

    def with_overrides(self, **dotted: Any) -> "Scenario":
        """Copy with dotted-path replacements, e.g. with_overrides(**{"filter.od": 20})."""
        from .config import apply_overrides
        return apply_overrides(self, dotted)

    @property
    def natural_tau_ns(self) -> float:
        """Intensity decay time 1/(2pi linewidth) of the first populated decay path."""
        populated = [p for p in self.source.paths if p.amplitude != 0] or list(self.source.paths)
        return 1e3 / (2.0 * math.pi * populated[0].linewidth_mhz)
