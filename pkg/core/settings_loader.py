from __future__ import annotations

import os
from pathlib import Path
from typing import Literal, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.numerics.tolerances import DEFAULT_TOLERANCES

SETTINGS_ENV_VAR = "SOBOLEV_SETTINGS"
DEFAULT_SETTINGS_PATH = Path(__file__).resolve().parent.parent / "config" / "settings.yaml"


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class AppSettings(_Frozen):
    log_level: str = "WARNING"
    event_log_file: Optional[Path] = None

    @field_validator("log_level")
    @classmethod
    def normalise_level(cls, value: str) -> str:
        level = value.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {value!r}")
        return level


class NumericsSettings(_Frozen):
    rel_tol: float = Field(DEFAULT_TOLERANCES.comparison.rel_tol, gt=0)
    series_tol: float = Field(DEFAULT_TOLERANCES.series.default_tol, gt=0)
    max_series_terms: int = Field(DEFAULT_TOLERANCES.series.max_terms, ge=1)


class SamplingSettings(_Frozen):
    seed: int = DEFAULT_TOLERANCES.sampling.seed
    trials: int = Field(DEFAULT_TOLERANCES.sampling.trials, ge=1)
    probe_window: int = Field(DEFAULT_TOLERANCES.sampling.probe_window, ge=1)
    support_size: int = Field(DEFAULT_TOLERANCES.sampling.support_size, ge=1)
    workers: int = Field(1, ge=1)


class OutputSettings(_Frozen):
    format: Literal["json", "csv"] = "json"
    indent: Optional[int] = Field(2, ge=0)


class Settings(_Frozen):
    app: AppSettings = AppSettings()
    numerics: NumericsSettings = NumericsSettings()
    sampling: SamplingSettings = SamplingSettings()
    output: OutputSettings = OutputSettings()


def resolve_settings_path(path: Optional[Path] = None) -> Path:
    """Explicit path, then $SOBOLEV_SETTINGS (a .env file is honoured), then config/settings.yaml."""
    if path is not None:
        return Path(path)
    load_dotenv()
    from_env = os.getenv(SETTINGS_ENV_VAR)
    return Path(from_env) if from_env else DEFAULT_SETTINGS_PATH


def load_settings(path: Optional[Path] = None) -> Settings:
    """Load YAML settings into strongly-typed Pydantic models."""
    settings_path = resolve_settings_path(path)
    with settings_path.open("r", encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}
    return Settings(**raw)
