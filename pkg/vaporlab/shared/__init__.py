from .result import (
    Result,
    Ok,
    Err,
    safe_call,
    match_result
)

from .errors import (
    SimulationError,
    DomainError,
    SingularSteadyStateError,
    GridMismatchError,
    WindowError,
    ConfigFormatError,
    UnknownScenarioError,
    InvalidScenarioError,
)

from .settings import SimSettings, get_settings
from .logs import setup_logging

__all__ = [
    "Result",
    "Ok",
    "Err",
    "safe_call",
    "match_result",

    # Errors
    "SimulationError",
    "DomainError",
    "SingularSteadyStateError",
    "GridMismatchError",
    "WindowError",
    "ConfigFormatError",
    "UnknownScenarioError",
    "InvalidScenarioError",

    # Process
    "SimSettings",
    "get_settings",
    "setup_logging",
]
