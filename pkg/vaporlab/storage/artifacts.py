"""
ARTIFACT WRITER
Focus: self-describing CSV and JSON outputs.
Location: vaporlab/storage/artifacts.py

Every CSV starts with '#' comment lines carrying the format version and the
fully-resolved scenario; every JSON embeds the same echo. Floats use polars'
shortest round-trip formatting so identical runs give identical bytes.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np
import polars as pl

from ..biphoton.spec import CorrelationTrace
from ..shared import Err, Ok, Result
from ..shared.errors import DomainError

logger = logging.getLogger("ArtifactWriter")

FORMAT_VERSION = 1


def _canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _atomic_write_text(path: Path, text: str) -> None:
    temp_file = path.with_suffix(path.suffix + ".tmp")
    temp_file.write_text(text, encoding="utf-8")
    temp_file.replace(path)


class ArtifactWriter:
    """Writes named artifacts below one output directory and remembers them."""

    def __init__(self, out_dir: Union[str, Path], scenario_echo: Dict[str, Any]):
        self._out_dir = Path(out_dir).resolve()
        self.scenario_echo = scenario_echo
        self.written: List[Path] = []
        self._out_dir.mkdir(parents=True, exist_ok=True)
        logger.debug(f"ArtifactWriter initialized at: {self._out_dir}")

    @property
    def out_dir(self) -> Path:
        return self._out_dir

    def _header(self) -> str:
        return f"# format_version: {FORMAT_VERSION}\n# scenario: {_canonical_json(self.scenario_echo)}\n"

    def write_frame(self, name: str, frame: pl.DataFrame) -> 'Result[Path, str]':
        try:
            path = self._out_dir / name
            _atomic_write_text(path, self._header() + frame.write_csv())
            self.written.append(path)
            logger.info(f"Wrote {name} | rows={frame.height}")
            return Ok(path)
        except Exception as e:
            logger.error(f"CSV write failed for {name}: {e}", exc_info=True)
            return Err(f"CSV Write Error: {e}")

    def write_json(self, name: str, payload: Dict[str, Any]) -> 'Result[Path, str]':
        try:
            path = self._out_dir / name
            document = {"format_version": FORMAT_VERSION, "scenario": self.scenario_echo, **payload}
            _atomic_write_text(path, json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
            self.written.append(path)
            logger.info(f"Wrote {name}")
            return Ok(path)
        except Exception as e:
            logger.error(f"JSON write failed for {name}: {e}", exc_info=True)
            return Err(f"JSON Write Error: {e}")


# ====================== READERS ======================

def read_artifact_frame(path: Union[str, Path]) -> pl.DataFrame:
    return pl.read_csv(path, comment_prefix="#")


def read_artifact_header(path: Union[str, Path]) -> Dict[str, Any]:
    """Parses the '# key: value' comment block at the top of an artifact CSV."""
    header: Dict[str, Any] = {}
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            if not line.startswith("#"):
                break
            key, _, value = line[1:].partition(":")
            value = value.strip()
            header[key.strip()] = json.loads(value) if value[:1] in "{[" or value.isdigit() else value
    return header


def read_histogram_csv(path: Union[str, Path], value_column: str = "counts") -> CorrelationTrace:
    """
    Measured (or exported) histogram with bin-centre delays into a trace.
    Accepts a 'counts' column or, for our own trace CSVs, 'value'.
    """
    frame = read_artifact_frame(path)
    if value_column not in frame.columns and "value" in frame.columns:
        value_column = "value"
    missing = {"delay_ns", value_column} - set(frame.columns)
    if missing:
        raise DomainError("histogram is missing columns", path=str(path), missing=sorted(missing))

    frame = frame.sort("delay_ns")
    delays = frame["delay_ns"].cast(pl.Float64).to_numpy()
    values = frame[value_column].cast(pl.Float64).to_numpy()
    if delays.size < 2:
        raise DomainError("histogram needs at least two bins", path=str(path))
    bin_ns = float(np.median(np.diff(delays)))
    logger.info(f"Ingested histogram {path} | bins={delays.size} bin={bin_ns:g} ns")
    return CorrelationTrace(bin_ns, delays, values)


__all__ = [
    "FORMAT_VERSION",
    "ArtifactWriter",
    "read_artifact_frame",
    "read_artifact_header",
    "read_histogram_csv",
]
