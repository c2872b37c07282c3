"""Configuration for fuzzyspectrum: process settings and experiment specs."""

import logging

from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    """Process settings loaded from environment variables and a .env file.

    Experiment parameters live in the YAML config file; these settings only
    shape how the process runs.
    """

    # Logging
    log_level: str = "INFO"

    # Process pool size for replications (1 = run in-process)
    workers: int = 1

    # Where artifacts go when neither --out nor the config names a directory
    output_dir: str = "results"

    model_config = SettingsConfigDict(
        env_prefix="FUZZYSPECTRUM_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


def get_settings() -> Settings:
    """Get the process settings instance."""
    return Settings()


from fuzzyspectrum.config.experiment import (  # noqa: E402
    ExperimentSpec,
    FuzzyConfig,
    OutputConfig,
    RadioConfig,
    RuleSpec,
    SimConfig,
    load_config,
    parse_config,
    serialize_config,
    with_overrides,
)

__all__ = [
    "Settings",
    "get_settings",
    "ExperimentSpec",
    "FuzzyConfig",
    "OutputConfig",
    "RadioConfig",
    "RuleSpec",
    "SimConfig",
    "load_config",
    "parse_config",
    "serialize_config",
    "with_overrides",
]
