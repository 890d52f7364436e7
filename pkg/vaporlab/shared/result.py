import functools
import logging
from typing import (
    Generic,
    TypeVar,
    Union,
    Callable,
    ParamSpec,
)
from dataclasses import dataclass

T = TypeVar("T")  # Success type
E = TypeVar("E")  # Error type
U = TypeVar("U")  # Match return type
P = ParamSpec("P")


@dataclass(frozen=True)
class Ok(Generic[T]):
    value: T

    def is_ok(self) -> bool:
        return True
    def is_err(self) -> bool:
        return False
    def unwrap(self) -> T:
        return self.value
    def unwrap_or(self, default: T) -> T:
        return self.value


@dataclass(frozen=True)
class Err(Generic[E]):
    error: E

    def is_ok(self) -> bool:
        return False
    def is_err(self) -> bool:
        return True
    def unwrap(self):
        # Re-raise typed errors as themselves so callers keep the context.
        if isinstance(self.error, BaseException):
            raise self.error
        raise ValueError(f"Attempted to unwrap Err: {self.error}")
    def unwrap_or(self, default):
        return default


Result = Union[Ok[T], Err[E]]

# ====================== DECORATORS & UTILS ======================

def safe_call(func: Callable[P, T]) -> Callable[P, "Result[T, Exception]"]:
    """
    Wraps a synchronous function so it returns a Result.
    SimulationErrors are kept as error objects (not stringified) so the
    CLI can map them to exit codes.
    """
    from .errors import SimulationError

    @functools.wraps(func)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> "Result[T, Exception]":
        try:
            return Ok(func(*args, **kwargs))
        except SimulationError as e:
            logging.getLogger("SafeCall").error(f"{func.__name__} failed: {e}")
            return Err(e)
    return wrapper


def match_result(
    result: Result[T, E],
    on_ok: Callable[[T], U],
    on_err: Callable[[E], U]
) -> U:
    """Type-narrowing dispatch over a Result."""
    if isinstance(result, Ok):
        return on_ok(result.value)
    elif isinstance(result, Err):
        return on_err(result.error)
    else:
        raise TypeError(f"Unknown Result type: {type(result)}")
