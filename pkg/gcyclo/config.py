"""Configuration settings for gcyclo."""

from pathlib import Path

from pydantic import AliasChoices, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings."""

    model_config = SettingsConfigDict(env_file=".env", case_sensitive=False, extra="ignore")

    # Paths
    base_dir: Path = Path(__file__).parent.parent
    outputs_dir: Path = Field(
        default=Path.cwd() / "outputs",
        validation_alias=AliasChoices("OUTPUTS_DIR", "outputs_dir"),
    )

    # Size caps protecting the O(N^2) measurements
    cap_period: int = Field(
        default=2**20,
        ge=1,
        validation_alias=AliasChoices("CYCLO_CAP_PERIOD", "cap_period"),
    )
    cap_degree: int = Field(
        default=128,
        ge=1,
        validation_alias=AliasChoices("CYCLO_CAP_DEGREE", "cap_degree"),
    )

    # Group orders below this use an exhaustive discrete-log sweep
    dlog_sweep_limit: int = Field(default=2**16, ge=1)

    # Identity verification and grid execution
    sample_budget: int = Field(
        default=20000,
        ge=1,
        validation_alias=AliasChoices("CYCLO_SAMPLE_BUDGET", "sample_budget"),
    )
    workers: int = Field(
        default=1,
        ge=1,
        validation_alias=AliasChoices("CYCLO_WORKERS", "workers"),
    )

    # Application settings
    app_name: str = Field(default="gcyclo", validation_alias=AliasChoices("APP_NAME", "app_name"))
    app_version: str = Field(default="0.1.0", validation_alias=AliasChoices("APP_VERSION", "app_version"))
    debug: bool = Field(default=False, validation_alias=AliasChoices("DEBUG", "debug"))

    # Logging
    log_level: str = Field(default="INFO", validation_alias=AliasChoices("LOG_LEVEL", "log_level"))


# Global settings instance
settings = Settings()
