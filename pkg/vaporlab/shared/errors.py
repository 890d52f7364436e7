"""
ERROR TAXONOMY
Every numeric or configuration failure is a SimulationError carrying a
context dict. Orchestration layers convert them into Err(...) values and
the CLI maps them onto exit codes.
"""
from typing import Any, Dict, List, Sequence


class SimulationError(Exception):
    """Base error with structured context."""

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = context

    def __str__(self) -> str:
        if not self.context:
            return self.message
        details = ", ".join(f"{k}={v!r}" for k, v in sorted(self.context.items()))
        return f"{self.message} ({details})"


class DomainError(SimulationError, ValueError):
    """Argument outside the domain of a numeric operation."""


class SingularSteadyStateError(SimulationError):
    """The Liouvillian null space is not one-dimensional."""

    def __init__(self, scheme: str, null_dimension: int):
        super().__init__(
            "steady state is not unique",
            scheme=scheme,
            null_dimension=null_dimension,
        )


class GridMismatchError(SimulationError):
    """Two objects that must share a frequency grid do not."""


class WindowError(SimulationError):
    """A delay window is too short or falls outside the trace."""


class ConfigFormatError(SimulationError):
    """A scenario file or override cannot be parsed."""


class UnknownScenarioError(SimulationError):
    def __init__(self, name: str, available: Sequence[str]):
        super().__init__(f"unknown scenario '{name}'", available=list(available))
        self.name = name
        self.available = list(available)


class InvalidScenarioError(SimulationError):
    def __init__(self, name: str, violations: List[str]):
        super().__init__(f"scenario '{name}' is invalid", violations=violations)
        self.violations = violations


__all__ = [
    "SimulationError",
    "DomainError",
    "SingularSteadyStateError",
    "GridMismatchError",
    "WindowError",
    "ConfigFormatError",
    "UnknownScenarioError",
    "InvalidScenarioError",
]
