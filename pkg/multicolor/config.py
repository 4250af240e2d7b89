"""Configuration and defaults for the multicolor engine, harness and service."""
from functools import lru_cache
from typing import Optional

from pydantic import BaseSettings, validator


class Settings(BaseSettings):
    """Environment-driven settings (prefix ``MULTICOLOR_``)."""

    app_name: str = "multicolor"
    description: str = (
        "Multigraph edge-colouring engine: density certificates, Tashkinov-tree "
        "augmentation and M(n,m) Monte Carlo experiments."
    )
    version: str = "1.0.0"
    api_prefix: str = "/api"
    docs_url: str = "/docs"
    redoc_url: str = "/redoc"
    openapi_url: str = "/openapi.json"

    # Runtime environment
    environment: str = "development"
    log_level: str = "INFO"
    sentry_dsn: Optional[str] = None

    # Exhaustive bounds
    rho_exhaustive_max_n: int = 22
    exact_max_m: int = 16

    # Colouring search
    switch_budget_factor: int = 4
    search_restarts: int = 3
    search_seed: int = 0
    decomposition_max_matchings: int = 20000
    decomposition_time_limit_seconds: float = 10.0

    # Experiments
    workers: int = 0
    default_epsilon: float = 0.3

    @validator(
        "rho_exhaustive_max_n",
        "exact_max_m",
        "switch_budget_factor",
        "decomposition_max_matchings",
        "decomposition_time_limit_seconds",
        pre=True,
    )
    def ensure_positive(cls, v, field):
        """Bounds and budgets must be strictly positive."""

        if v is None or float(v) <= 0:
            raise ValueError(f"{field.name.upper()} must be positive")
        return v

    @validator("search_restarts", "workers", pre=True)
    def ensure_non_negative(cls, v, field):
        if v is None or int(v) < 0:
            raise ValueError(f"{field.name.upper()} must be non-negative")
        return v

    @validator("default_epsilon")
    def ensure_epsilon(cls, v):
        if not 0 < v < 1:
            raise ValueError("DEFAULT_EPSILON must lie in (0, 1)")
        return v

    class Config:
        env_prefix = "MULTICOLOR_"
        env_file = ".env"
        case_sensitive = False


@lru_cache()
def get_settings() -> Settings:
    """Return cached settings instance."""

    return Settings()
