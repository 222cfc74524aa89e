"""Application-wide configuration powered by pydantic-settings.

Loads environment variables (prefix ``METASYM_``) and an optional .env file
once and provides typed, centralised access to paths and tuning parameters.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


# The project root is two levels above metasym/core/config.py
_PROJECT_ROOT = Path(__file__).resolve().parents[2]


class Settings(BaseSettings):
    """Global settings for the Metasym verifier."""

    model_config = SettingsConfigDict(
        env_prefix="METASYM_",
        env_file=str(_PROJECT_ROOT / ".env"),
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # ---- Application metadata ----
    app_name: str = "Metasym"
    version: str = "0.1.0"
    debug: bool = False
    log_level: str = "INFO"

    # ---- Paths ----
    project_root: Path = _PROJECT_ROOT
    workspace_dir: Optional[Path] = None

    # ---- Group enumeration ----
    group_cap: int = 10_000
    braid_limit: int = 50_000

    # ---- Sampled checks ----
    random_seed: int = 0
    gallery_samples: int = 10_000


settings = Settings()
