"""Configuration settings for PDO-MMD."""

from functools import lru_cache
from typing import Literal

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class GridConfig(BaseModel):
    """Default working grids.

    The 1D and 2D defaults are the desk-scale lattices every command falls
    back to when no grid is given explicitly.
    """

    dim: Literal[1, 2] = Field(
        default=1,
        description="Dimension of the default grid",
    )

    # 1D lattice
    points_1d: int = Field(
        default=512,
        ge=8,
        description="Points per axis for 1D grids (power of two)",
    )
    half_width_1d: float = Field(
        default=16.0,
        gt=0.0,
        description="Half width of 1D grids",
    )

    # 2D lattice
    points_2d: int = Field(
        default=64,
        ge=8,
        description="Points per axis for 2D grids (power of two)",
    )
    half_width_2d: float = Field(
        default=8.0,
        gt=0.0,
        description="Half width of 2D grids",
    )

    def resolve(self, dim: int | None = None) -> tuple[int, int, float]:
        """Get (dim, points_per_axis, half_width) for the requested dimension."""
        d = self.dim if dim is None else dim
        if d == 2:
            return 2, self.points_2d, self.half_width_2d
        return 1, self.points_1d, self.half_width_1d


class ToleranceConfig(BaseModel):
    """Numerical tolerances shared across modules.

    Relative tolerances are scaled by the natural magnitude of the quantity
    they guard (sup norm, largest eigenvalue, HS norm).
    """

    tol_neg: float = Field(
        default=1e-9,
        gt=0.0,
        description="Relative negative-lobe tolerance for kernel profiles",
    )
    psd: float = Field(
        default=1e-8,
        gt=0.0,
        description="Relative eigenvalue floor for PSD checks",
    )
    pdf_mass_drop: float = Field(
        default=1e-12,
        ge=0.0,
        description="Canonical terms with smaller pdf mass are dropped",
    )
    numerical_rank: float = Field(
        default=1e-12,
        gt=0.0,
        description="Singular values below this fraction of sigma_1 are noise",
    )
    density_mass: float = Field(
        default=1e-6,
        gt=0.0,
        description="Allowed deviation of a density's mass from one",
    )
    check: float = Field(
        default=1e-9,
        gt=0.0,
        description="Harness tolerance, scaled by the instance HS norm",
    )
    moment_denominator: float = Field(
        default=1e-12,
        gt=0.0,
        description="Smallest admissible local-moment denominator",
    )
    witness_min: float = Field(
        default=1e-14,
        gt=0.0,
        description="Spectral MMD below which the witness is undefined",
    )


class HarnessConfig(BaseModel):
    """Configuration for the verification harness."""

    trials: int = Field(
        default=100,
        ge=1,
        description="Default number of trials per check",
    )
    rank_sweep: int = Field(
        default=4,
        ge=0,
        le=32,
        description="Truncation checks sweep r = 0..rank_sweep per trial",
    )
    record_runtime: bool = Field(
        default=False,
        description="Write wall-clock runtime into reports (breaks byte reproducibility)",
    )


class FitConfig(BaseModel):
    """Configuration for MMD fitting."""

    budget: int = Field(
        default=500,
        ge=50,
        description="Maximum objective evaluations",
    )
    tolerance: float = Field(
        default=1e-4,
        gt=0.0,
        description="Simplex diameter / gradient norm convergence threshold",
    )
    fd_step: float = Field(
        default=1e-4,
        gt=0.0,
        description="Relative central-difference step",
    )
    noise_size: int = Field(
        default=5000,
        ge=1,
        description="Number of fixed base-noise draws per model",
    )


class LoggingConfig(BaseModel):
    """Configuration for logging behavior.

    Controls file logging, rotation, and output format.
    """

    log_file: str | None = Field(
        default=None,
        description="Optional path for file logging (enables rotation)",
    )
    rotation: str = Field(
        default="10 MB",
        description="When to rotate log file (e.g., '10 MB', '1 day')",
    )
    retention: str = Field(
        default="7 days",
        description="How long to keep rotated logs",
    )
    serialize: bool = Field(
        default=False,
        description="If True, output JSON format to file",
    )


class Settings(BaseSettings):
    """Application settings loaded from PDOMMD_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="PDOMMD_",
        env_nested_delimiter="__",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # --------------------------------------------------------------------------
    # Application
    # --------------------------------------------------------------------------
    threads: int = Field(
        default=1,
        ge=1,
        le=256,
        description="Cap on internal worker threads (PDOMMD_THREADS)",
    )
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="INFO",
        description="Logging level",
    )
    output_dir: str = Field(
        default="pdommd-out",
        description="Default directory for command artifacts",
    )

    # --------------------------------------------------------------------------
    # Numerics
    # --------------------------------------------------------------------------
    grid: GridConfig = Field(
        default_factory=GridConfig,
        description="Default working grids",
    )
    tolerances: ToleranceConfig = Field(
        default_factory=ToleranceConfig,
        description="Numerical tolerances",
    )

    # --------------------------------------------------------------------------
    # Harness & Fit
    # --------------------------------------------------------------------------
    harness: HarnessConfig = Field(
        default_factory=HarnessConfig,
        description="Verification harness configuration",
    )
    fit: FitConfig = Field(
        default_factory=FitConfig,
        description="MMD fitting configuration",
    )

    # --------------------------------------------------------------------------
    # Logging Configuration
    # --------------------------------------------------------------------------
    logging: LoggingConfig = Field(
        default_factory=LoggingConfig,
        description="Logging configuration (file output, rotation)",
    )


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
