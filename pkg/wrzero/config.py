"""Application configuration using Pydantic Settings."""

from functools import lru_cache
from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Numerical defaults loaded from WRZERO_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="WRZERO_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    # Integrator
    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    t_end: float = 20.0
    positivity_floor: float = 1e-12
    max_steps: int = 1_000_000

    # Steady states
    steady_tolerance: float = 1e-9
    field_tolerance: float = 1e-9
    sample_grid: tuple[int, ...] = (-1, 0, 1)
    max_sample_points: int = 27

    # Certification
    lyapunov_slack: float = 1e-8  # relative to |L(x0)|
    conservation_tolerance: float = 1e-6
    convergence_tolerance: float = 1e-4

    # Reproducibility
    seed: int = 0

    # CLI
    output_format: Literal["json", "dot", "text"] = "json"
    log_level: str = "WARNING"


def validate_numeric_settings(settings: Settings) -> None:
    """
    Validate tolerance and horizon settings.

    Raises RuntimeError when a value is outside the range the integrator and
    the certification checks are meaningful for.
    """
    if not 1e-12 < settings.rel_tol < 1e-2:
        raise RuntimeError(
            f"WRZERO_REL_TOL must lie in (1e-12, 1e-2), got {settings.rel_tol}"
        )
    for name in (
        "abs_tol",
        "t_end",
        "positivity_floor",
        "steady_tolerance",
        "field_tolerance",
        "lyapunov_slack",
        "conservation_tolerance",
        "convergence_tolerance",
    ):
        if getattr(settings, name) <= 0:
            raise RuntimeError(f"WRZERO_{name.upper()} must be positive")
    if settings.max_steps < 1 or settings.max_sample_points < 1:
        raise RuntimeError("WRZERO_MAX_STEPS and WRZERO_MAX_SAMPLE_POINTS must be at least 1")
    if not settings.sample_grid:
        raise RuntimeError("WRZERO_SAMPLE_GRID must not be empty")


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    settings = Settings()
    validate_numeric_settings(settings)
    return settings
