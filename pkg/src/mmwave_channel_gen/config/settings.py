"""Application settings using Pydantic Settings."""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="MMWCHAN_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = Field(
        default="WARNING",
        description="Log level for the stderr handler (DEBUG, INFO, WARNING, ...)",
    )
    progress_every_batches: int = Field(
        default=50,
        ge=1,
        description="Emit a training progress line every N minibatches",
    )

    # Channel conventions
    carrier_frequency_hz: float = Field(
        default=28e9,
        gt=0,
        description="Carrier frequency used for free-space loss of LOS paths",
    )
    absent_threshold_db: float = Field(
        default=195.0,
        gt=0,
        le=200.0,
        description="Generated path blocks at or above this loss are dropped",
    )

    # Dataset ingest
    los_angle_tolerance_deg: float = Field(
        default=0.5,
        gt=0,
        description="Angular tolerance for recognizing the LOS path on ingest",
    )
    los_delay_tolerance_s: float = Field(
        default=1e-9,
        gt=0,
        description="Delay tolerance for recognizing the LOS path on ingest",
    )


@lru_cache
def get_settings() -> Settings:
    """Get cached application settings.

    Returns:
        Settings: Application settings instance
    """
    return Settings()
