"""MMD estimate results."""

from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any


class MmdMethod(StrEnum):
    """How an MMD value was computed."""

    GRAM_V = "gram_v"
    """Gram-form V-statistic (diagonal included)."""

    GRAM_U = "gram_u"
    """Gram-form U-statistic (diagonal excluded)."""

    SPECTRAL = "spectral"
    """L2 norm of the PDO applied to empirical characteristic functions."""

    DENSITY_GRID = "density_grid"
    """Same functional with gridded densities in place of samples."""


class GridWarning(StrEnum):
    """Non-fatal numerical warnings attached to estimates."""

    GRID_TOO_COARSE = "grid_too_coarse"
    """Sample radius times feature-grid spacing exceeds pi/4."""


@dataclass(frozen=True)
class MmdEstimate:
    """MMD value (not squared) with provenance."""

    value: float
    """sqrt(max(squared, 0))."""

    squared: float
    method: MmdMethod
    metadata: dict[str, Any] = field(default_factory=dict)
    warnings: tuple[GridWarning, ...] = ()

    @classmethod
    def from_squared(
        cls,
        squared: float,
        method: MmdMethod,
        metadata: dict[str, Any] | None = None,
        warnings: tuple[GridWarning, ...] = (),
    ) -> "MmdEstimate":
        return cls(
            value=max(squared, 0.0) ** 0.5,
            squared=squared,
            method=method,
            metadata=metadata or {},
            warnings=warnings,
        )

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            "value": self.value,
            "squared": self.squared,
            "method": self.method.value,
            "metadata": self.metadata,
            "warnings": [w.value for w in self.warnings],
        }
