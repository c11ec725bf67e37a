"""Run configuration shared by every CLI command.

Values are layered: model defaults, then a JSON config file, then flags.
Unknown keys are rejected so a misspelt option cannot be silently ignored.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import Field, field_validator, model_validator

from pdo_mmd.config import ToleranceConfig
from pdo_mmd.schemas.base import SchemaBase
from pdo_mmd.schemas.enums import CheckId, EstimatorMethod, ModelFamily, OptimizerKind


class RunConfig(SchemaBase):
    """Resolved configuration of one command run."""

    # Common
    seed: int = Field(default=0, ge=0)
    out: str | None = Field(default=None, description="Output directory")
    dim: Literal[1, 2] | None = None
    grid_n: int | None = Field(default=None, ge=8)
    half_width: float | None = Field(default=None, gt=0.0)
    tolerances: dict[str, float] = Field(default_factory=dict)

    # Symbol: a file path or an inline symbol document
    symbol: str | dict[str, Any] | None = None
    symbol_ref: str | None = Field(default=None, description="Alias of symbol used by fit configs")

    # Inputs
    x: str | None = Field(default=None, description="Samples (or density CSV) of u")
    y: str | None = Field(default=None, description="Samples (or density CSV) of v")
    points: str | None = None

    # mmd / kernel
    method: EstimatorMethod = EstimatorMethod.SPECTRAL
    statistic: Literal["v", "u"] = "v"
    pad: int = Field(default=8, ge=1)

    # svd / truncate
    rank: int | None = Field(default=None, ge=0)
    functions: int = Field(default=4, ge=0)

    # verify
    check: CheckId | None = None
    trials: int | None = Field(default=None, ge=1)
    instance: dict[str, Any] = Field(default_factory=dict)

    # fit
    family: ModelFamily = ModelFamily.GAUSSIAN
    init: list[float] | None = None
    optimizer: OptimizerKind = OptimizerKind.NELDER_MEAD
    budget: int | None = Field(default=None, ge=50)
    noise_size: int | None = Field(default=None, ge=1)

    @field_validator("tolerances")
    @classmethod
    def _known_tolerances(cls, v: dict[str, float]) -> dict[str, float]:
        unknown = sorted(set(v) - set(ToleranceConfig.model_fields))
        if unknown:
            raise ValueError(f"unknown tolerance key(s): {', '.join(unknown)}")
        return v

    @model_validator(mode="after")
    def _symbol_alias(self) -> RunConfig:
        if self.symbol is not None and self.symbol_ref is not None:
            raise ValueError("give either symbol or symbol_ref, not both")
        return self

    @property
    def symbol_source(self) -> str | dict[str, Any] | None:
        return self.symbol if self.symbol is not None else self.symbol_ref

    def log_dict(self) -> dict[str, Any]:
        """Non-default values, for the resolved-config log line."""
        return self.model_dump(mode="json", exclude_defaults=True)
