from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, Protocol, runtime_checkable

import polars as pl

if TYPE_CHECKING:
    from .shared import Result


@runtime_checkable
class ArtifactSink(Protocol):
    """Contract for persisting run artifacts."""
    def write_frame(self, name: str, frame: pl.DataFrame) -> 'Result[Path, str]':
        ...
    def write_json(self, name: str, payload: Dict[str, Any]) -> 'Result[Path, str]':
        ...
    @property
    def out_dir(self) -> Path:
        ...
