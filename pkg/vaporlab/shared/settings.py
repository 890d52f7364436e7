"""
PROCESS SETTINGS
Environment-driven knobs (prefix BIPHOTON_SIM_). Scenario physics never
lives here; only how the process runs.
"""
import os
from functools import lru_cache
from typing import Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class SimSettings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="BIPHOTON_SIM_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    threads: int = Field(0, ge=0, description="Scan worker threads, 0 = one per CPU")
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"
    log_dir: Optional[str] = Field(None, description="Directory for run log files")

    def worker_count(self, n_tasks: int) -> int:
        limit = self.threads or (os.cpu_count() or 1)
        return max(1, min(limit, n_tasks))


@lru_cache(maxsize=1)
def get_settings() -> SimSettings:
    return SimSettings()
