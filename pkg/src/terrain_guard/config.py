"""Application configuration using pydantic-settings."""

from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Solver settings loaded from environment variables (TERRAIN_GUARD_*)."""

    model_config = SettingsConfigDict(
        env_prefix="TERRAIN_GUARD_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Oracle sizes
    exact_candidate_cap: int = 24
    visibility_cap: int = 512

    # Sweep instrumentation
    check_invariants: bool = False
    cross_check_visibility: bool = False

    # Solver
    concurrent_sweeps: bool = True

    # Logging
    log_level: str = "WARNING"

    # Benchmark defaults
    bench_sizes: str = "1000,10000,100000"
    bench_seeds: int = 3
    bench_max_run: int = 8
    bench_max_jump: int = 8

    # SVG rendering
    render_scale: int = 20
    render_margin: int = 20

    @property
    def bench_size_list(self) -> list[int]:
        return [int(s) for s in self.bench_sizes.split(",") if s.strip()]


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
