"""
Application configuration management using Pydantic BaseSettings.

This module centralizes the numerical defaults of the sphere-mergelyan
laboratory: inverse-map controls, verification grid sizes, quadrature budgets,
worker count and logging. Every component can be overridden through
environment variables (prefix ``SPHERE_MERGELYAN_``) or a ``.env`` file;
per-experiment JSON files override them again for a single run.
"""

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class InverseSettings(BaseSettings):
    """Controls for the numerical inverse of the Riemann map."""

    model_config = SettingsConfigDict(env_prefix="SPHERE_MERGELYAN_INVERSE_")

    tol: float = Field(default=1e-13, gt=0.0)
    grid: int = Field(default=64, ge=8)
    max_iter: int = Field(default=100, ge=1)

    # Boundary polygon resolution used for membership diagnostics
    containment_m: int = Field(default=1024, ge=3)


class VerificationSettings(BaseSettings):
    """Sizes of the grids on which sup-errors are measured."""

    model_config = SettingsConfigDict(env_prefix="SPHERE_MERGELYAN_VERIFY_")

    boundary: int = Field(default=4096, ge=3)
    interior: int = Field(default=2048, ge=1)

    # Fixed chunk length for grid evaluation; independent of the worker count
    chunk_size: int = Field(default=1024, ge=1)


class QuadratureSettings(BaseSettings):
    """Trapezoid-rule budget for Cauchy-integral Taylor coefficients."""

    model_config = SettingsConfigDict(env_prefix="SPHERE_MERGELYAN_QUAD_")

    min_nodes: int = Field(default=512, ge=8)
    nodes_per_degree: int = Field(default=8, ge=2)
    max_nodes: int = Field(default=2**20, ge=8)
    consistency_tol: float = Field(default=1e-12, gt=0.0)


class LoggingSettings(BaseSettings):
    """Logging configuration settings."""

    model_config = SettingsConfigDict(env_prefix="SPHERE_MERGELYAN_LOG_")

    level: str = "INFO"
    format: str = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
    date_format: str = "%Y-%m-%d %H:%M:%S"

    # File logging
    file_enabled: bool = True
    file_path: str = "logs/sphere_mergelyan.log"
    file_max_bytes: int = 10 * 1024 * 1024  # 10MB
    file_backup_count: int = 5

    # Console logging
    console_enabled: bool = True

    @field_validator("level")
    @classmethod
    def validate_level(cls, v: str) -> str:
        """Validate log level name."""
        level = v.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {v}")
        return level


class Settings(BaseSettings):
    """Main application settings."""

    model_config = SettingsConfigDict(
        env_prefix="SPHERE_MERGELYAN_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Directory paths
    results_dir: str = "data/results"

    # Worker count fallback for --jobs (SPHERE_MERGELYAN_JOBS)
    jobs: int = Field(default=1, ge=1)

    # Component settings
    inverse: InverseSettings = Field(default_factory=InverseSettings)
    verification: VerificationSettings = Field(default_factory=VerificationSettings)
    quadrature: QuadratureSettings = Field(default_factory=QuadratureSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)


# Global settings instance
settings = Settings()
