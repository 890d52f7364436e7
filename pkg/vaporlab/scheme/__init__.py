from .grid import FrequencyGrid
from .levels import Level, Transition, LevelScheme, PumpField, BeamGeometry, VALUE_OBJECT
from . import constants

__all__ = [
    "FrequencyGrid",
    "Level",
    "Transition",
    "LevelScheme",
    "PumpField",
    "BeamGeometry",
    "VALUE_OBJECT",
    "constants",
]
