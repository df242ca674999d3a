"""Configuration module using Pydantic BaseSettings (pydantic v2)."""

import os
from typing import Literal

from pydantic import AliasChoices, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

ExecutorKind = Literal["process", "thread"]


class Config(BaseSettings):
    """Process-level configuration using Pydantic BaseSettings.

    Environment variables automatically map from field names in upper/lower case.
    For example: `LOG_LEVEL`, `UARNC_THREADS`, `RESULTS_DIR`, etc.
    Experiment parameters live in the JSON experiment file (see `config.experiment`).
    """

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    environment: str = Field(default="development")
    log_level: str = Field(default="INFO")
    axiom_dataset: str = Field(default="uarnc-placement")
    axiom_token: str | None = Field(default=None)

    # Worker pool cap; 0 means one worker per CPU
    uarnc_threads: int = Field(
        default=0,
        validation_alias=AliasChoices("uarnc_threads", "UARNC_THREADS"),
    )

    # Simulation blocks run in spawned processes unless set to "thread"
    executor: ExecutorKind = Field(
        default="process",
        validation_alias=AliasChoices("executor", "UARNC_EXECUTOR"),
    )

    # Output defaults
    results_dir: str = Field(default="results")
    default_format: str = Field(default="csv")

    @field_validator("uarnc_threads")
    def validate_threads(cls, v):
        """Reject negative worker caps."""
        if v < 0:
            raise ValueError(f"UARNC_THREADS must be >= 0, got {v}")
        return v

    @field_validator("default_format")
    def validate_format(cls, v):
        v = str(v).lower()
        if v not in {"csv", "json"}:
            raise ValueError(f"Unsupported output format: {v}")
        return v

    @property
    def worker_count(self) -> int:
        """Effective number of concurrent workers."""
        if self.uarnc_threads:
            return self.uarnc_threads
        return os.cpu_count() or 1

    @property
    def normalized_log_level(self) -> str:
        """Return an upper-case validated log level string with fallback to INFO."""
        level = str(self.log_level).upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            return "INFO"
        return level


# Global config instance
_config = None


def get_config() -> Config:
    """Get the application configuration."""
    global _config
    if _config is None:
        _config = Config()
    return _config


def reset_config() -> None:
    """Drop the cached instance so the next `get_config` re-reads the environment."""
    global _config
    _config = None
