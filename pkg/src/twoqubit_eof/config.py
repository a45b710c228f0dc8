"""Configuration management using pydantic-settings."""

import logging
from functools import lru_cache
from typing import Annotated

from pydantic import BeforeValidator, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)


def parse_log_level(v: str | int) -> str:
    """Normalize a log level given as name or number."""
    if isinstance(v, int):
        return logging.getLevelName(v)
    return v.strip().upper()


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="TWOQUBIT_EOF_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Logging
    log_level: Annotated[str, BeforeValidator(parse_log_level)] = "INFO"

    # Batch execution
    threads: int = Field(default=1, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)

    # Oracle
    verify_samples: int = Field(default=500, ge=1)
    sample_max_members: int = Field(default=8, ge=1, le=16)
    search_restarts: int = Field(default=20, ge=1)
    search_iterations: int = Field(default=2000, ge=0)

    # Output
    output_digits: int = Field(default=15, ge=1, le=17)

    # Run the R-route next to the Takagi route in lambda_spectrum
    spectrum_cross_check: bool = True


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


# Basis declaration used by matrix files and records
BASIS_DECLARATION = "up-up, up-down, down-up, down-down"

# Hard cap on decomposition size
MAX_MEMBERS = 16
