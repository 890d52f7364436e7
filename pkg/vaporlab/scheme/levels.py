"""
LEVEL SCHEME MODULE
Atomic levels, dipole transitions, pump fields and beam geometry.
Location: vaporlab/scheme/levels.py

All models are immutable value objects. Domain invariants are reported by
violations() so a whole scenario can be audited in one pass.
"""
import math
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..shared.errors import DomainError
from .constants import IDLER_NM, LOWER_PUMP_NM, SIGNAL_NM, UPPER_PUMP_NM

VALUE_OBJECT = ConfigDict(frozen=True, extra='forbid')


def _require_valid(found: List[str], what: str) -> None:
    if found:
        raise DomainError(f"invalid {what}", violations=found)


# ====================== LEVELS & TRANSITIONS ======================

class Level(BaseModel):
    model_config = VALUE_OBJECT

    label: str
    energy_offset_mhz: float = Field(0.0, description="Offset from the manifold reference (MHz)")
    population_decay_rate_mhz: float = Field(0.0, description="Total population decay as a linewidth (MHz)")
    manifold: str = Field("", description="Manifold the offset is measured in; defaults to the label")

    @property
    def manifold_name(self) -> str:
        return self.manifold or self.label

    @property
    def is_ground(self) -> bool:
        return self.population_decay_rate_mhz == 0.0

    def violations(self, path: str) -> List[str]:
        if not self.population_decay_rate_mhz >= 0:
            return [f"{path}.population_decay_rate_mhz: must be >= 0"]
        return []


class Transition(BaseModel):
    model_config = VALUE_OBJECT

    upper: str
    lower: str
    dipole: float = Field(1.0, description="Relative dipole amplitude")

    @property
    def key(self) -> Tuple[str, str]:
        return (self.upper, self.lower)


class LevelScheme(BaseModel):
    model_config = VALUE_OBJECT

    label: str
    levels: Tuple[Level, ...]
    transitions: Tuple[Transition, ...]

    def index(self) -> Dict[str, int]:
        return {level.label: i for i, level in enumerate(self.levels)}

    def level(self, label: str) -> Level:
        for lvl in self.levels:
            if lvl.label == label:
                return lvl
        raise DomainError("level not in scheme", scheme=self.label, level=label)

    def find_transition(self, upper: str, lower: str) -> Optional[Transition]:
        for tr in self.transitions:
            if tr.key == (upper, lower):
                return tr
        return None

    def transitions_from(self, upper: str) -> List[Transition]:
        return [tr for tr in self.transitions if tr.upper == upper]

    def ground_levels(self) -> List[Level]:
        return [lvl for lvl in self.levels if lvl.is_ground]

    def violations(self, path: str) -> List[str]:
        found: List[str] = []
        labels = [lvl.label for lvl in self.levels]
        if len(set(labels)) != len(labels):
            found.append(f"{path}.levels: duplicate labels")
        for i, lvl in enumerate(self.levels):
            found.extend(lvl.violations(f"{path}.levels[{i}]"))
        if not self.transitions:
            found.append(f"{path}.transitions: at least one transition required")
        for i, tr in enumerate(self.transitions):
            for end in (tr.upper, tr.lower):
                if end not in labels:
                    found.append(f"{path}.transitions[{i}]: unknown level '{end}'")
            if not math.isfinite(tr.dipole):
                found.append(f"{path}.transitions[{i}].dipole: must be finite")
        return found

    def ensure_valid(self) -> None:
        _require_valid(self.violations("scheme"), "level scheme")


# ====================== FIELDS & GEOMETRY ======================

class PumpField(BaseModel):
    model_config = VALUE_OBJECT

    detuning_mhz: float = Field(0.0, description="Detuning from its transition (MHz)")
    rabi_mhz: float = Field(0.0, description="Rabi frequency (MHz)")
    wavelength_nm: float = Field(LOWER_PUMP_NM, gt=0)
    direction: Tuple[float, float, float] = (0.0, 0.0, 1.0)

    def violations(self, path: str) -> List[str]:
        found: List[str] = []
        if not self.rabi_mhz >= 0:
            found.append(f"{path}.rabi_mhz: must be >= 0")
        norm = float(np.linalg.norm(self.direction))
        if abs(norm - 1.0) > 1e-12:
            found.append(f"{path}.direction: |direction| = {norm!r}, must be 1")
        return found


class BeamGeometry(BaseModel):
    """Coplanar beam angles measured from the lower-pump (z) axis."""
    model_config = VALUE_OBJECT

    theta1_deg: float = 2.0
    theta2_deg: float = 0.7
    theta3_deg: float = 2.7
    wavelengths_nm: Tuple[float, float, float, float] = (LOWER_PUMP_NM, UPPER_PUMP_NM, SIGNAL_NM, IDLER_NM)

    def violations(self, path: str) -> List[str]:
        found: List[str] = []
        for name in ("theta1_deg", "theta2_deg", "theta3_deg"):
            value = getattr(self, name)
            if not 0.0 <= value < 90.0:
                found.append(f"{path}.{name}: {value} outside [0, 90)")
        if any(not w > 0 for w in self.wavelengths_nm):
            found.append(f"{path}.wavelengths_nm: must be > 0")
        return found


__all__ = [
    "Level",
    "Transition",
    "LevelScheme",
    "PumpField",
    "BeamGeometry",
    "VALUE_OBJECT",
]
