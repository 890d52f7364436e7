"""
RUN MANIFEST REGISTRY
Focus: scenario hashing and the manifest.json bookkeeping of a run.
Location: vaporlab/storage/manifest.py
"""
import hashlib
import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Union

from pydantic import BaseModel, ConfigDict, Field

from .. import __version__
from ..shared import Err, Ok, Result
from .artifacts import FORMAT_VERSION

logger = logging.getLogger("ManifestRegistry")

MANIFEST_NAME = "manifest.json"


class RunManifest(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    format_version: int = FORMAT_VERSION
    tool_version: str = __version__
    command: str
    scenario: Dict[str, Any]
    scenario_hash: str
    overrides: List[str] = Field(default_factory=list)
    artifacts: List[str] = Field(default_factory=list, description="Paths relative to the output directory")
    duration_s: float = 0.0
    created_at: str = Field(default_factory=lambda: datetime.now(timezone.utc).isoformat())


class ManifestRegistry:
    """Keeps manifest.json of one output directory consistent with its artifacts."""

    def __init__(self, out_dir: Union[str, Path]):
        self.out_dir = Path(out_dir).resolve()
        self.manifest_file = self.out_dir / MANIFEST_NAME
        self.out_dir.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def scenario_hash(scenario_echo: Dict[str, Any]) -> str:
        # Sort keys is mandatory for hash consistency
        config_str = json.dumps(scenario_echo, sort_keys=True, default=str)
        return hashlib.sha256(config_str.encode()).hexdigest()

    def build(
        self,
        command: str,
        scenario_echo: Dict[str, Any],
        artifacts: List[Path],
        duration_s: float,
        overrides: List[str],
    ) -> RunManifest:
        return RunManifest(
            command=command,
            scenario=scenario_echo,
            scenario_hash=self.scenario_hash(scenario_echo),
            overrides=list(overrides),
            artifacts=[Path(p).resolve().relative_to(self.out_dir).as_posix() for p in artifacts],
            duration_s=duration_s,
        )

    def write(self, manifest: RunManifest) -> 'Result[Path, str]':
        missing = [a for a in manifest.artifacts if not (self.out_dir / a).exists()]
        if missing:
            return Err(f"Manifest lists missing artifacts: {missing}")
        try:
            # Atomic Write Pattern: Write to .tmp then rename
            temp_file = self.manifest_file.with_suffix('.tmp')
            with open(temp_file, 'w', encoding='utf-8') as f:
                json.dump(manifest.model_dump(mode="json"), f, indent=2, sort_keys=True, ensure_ascii=False)
            temp_file.replace(self.manifest_file)
            logger.info(f"Manifest written | artifacts={len(manifest.artifacts)} hash={manifest.scenario_hash[:8]}")
            return Ok(self.manifest_file)
        except Exception as e:
            logger.error(f"Manifest write failed: {e}", exc_info=True)
            return Err(f"Manifest Write Error: {e}")

    def load(self) -> 'Result[RunManifest, str]':
        try:
            if not self.manifest_file.exists():
                return Err(f"Manifest not found: {self.manifest_file}")
            with open(self.manifest_file, 'r', encoding='utf-8') as f:
                return Ok(RunManifest.model_validate(json.load(f)))
        except Exception as e:
            logger.error(f"Failed to load manifest: {e}")
            return Err(f"Manifest load failed: {e}")

    def verify_consistency(self, scenario_echo: Dict[str, Any]) -> 'Result[bool, str]':
        """True when the stored manifest was produced from this scenario."""
        loaded = self.load()
        if loaded.is_err():
            return Err(f"Consistency check failed: {loaded.error}")
        stored = loaded.unwrap()
        current = self.scenario_hash(scenario_echo)
        consistent = current == stored.scenario_hash
        if not consistent:
            logger.warning(f"Hash mismatch: {current[:8]} vs {stored.scenario_hash[:8]}")
        return Ok(consistent)


__all__ = ["MANIFEST_NAME", "RunManifest", "ManifestRegistry"]
