"""Result object for MMD fits."""

from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any


class StopReason(StrEnum):
    """Why an optimizer stopped."""

    CONVERGED = "converged"
    BUDGET_EXHAUSTED = "budget_exhausted"
    STALLED = "stalled"
    """Backtracking found no decrease along the negative gradient."""

    DEGENERATE = "degenerate"
    """The symbol is zero, so the objective is constant."""


@dataclass
class FitResult:
    """Outcome of fit_mmd."""

    params: list[float]
    """Best parameters found."""

    names: list[str]
    initial: list[float]
    family: str
    optimizer: str
    trajectory: list[float] = field(default_factory=list)
    """Objective (MMD) after every accepted step, nonincreasing."""

    evaluations: int = 0
    """Distinct objective evaluations."""

    converged: bool = False
    stop_reason: StopReason = StopReason.CONVERGED
    warnings: list[str] = field(default_factory=list)
    seed: int = 0

    @property
    def objective(self) -> float | None:
        return self.trajectory[-1] if self.trajectory else None

    @property
    def named_params(self) -> dict[str, float]:
        return dict(zip(self.names, self.params, strict=True))

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            "family": self.family,
            "optimizer": self.optimizer,
            "params": self.named_params,
            "initial": dict(zip(self.names, self.initial, strict=True)),
            "objective": self.objective,
            "trajectory": self.trajectory,
            "evaluations": self.evaluations,
            "converged": self.converged,
            "stop_reason": self.stop_reason.value,
            "warnings": self.warnings,
            "seed": self.seed,
        }
