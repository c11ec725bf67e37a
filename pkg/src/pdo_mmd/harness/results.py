"""Result objects for harness checks.

Per-trial records carry the trial index so that reports assembled from
concurrent trials merge in a deterministic order.
"""

from __future__ import annotations

import json
from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from pdo_mmd.exceptions import HarnessError
from pdo_mmd.schemas import CheckId


@dataclass
class TrialRecord:
    """Outcome of one trial of one check."""

    trial: int
    """Index within the run."""

    seed: int
    """Seed that regenerates the trial's instance."""

    lhs: float = 0.0
    rhs: float = 0.0
    tolerance: float = 0.0
    """Absolute slack allowed on the margin."""

    passed: bool = True
    details: dict[str, Any] = field(default_factory=dict)
    error: Exception | None = None
    """Numerical failure raised while evaluating the trial."""

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def ratio(self) -> float | None:
        """lhs / rhs, or None when rhs vanishes."""
        return self.lhs / self.rhs if self.rhs > 0.0 else None

    @property
    def success(self) -> bool:
        return self.error is None

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        result: dict[str, Any] = {
            "trial": self.trial,
            "seed": self.seed,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.details:
            result["details"] = self.details
        if self.error:
            result["error"] = str(self.error)
            result["error_type"] = type(self.error).__name__
        return result

    @classmethod
    def from_error(cls, trial: int, seed: int, error: Exception) -> TrialRecord:
        """Record for a trial whose evaluation raised."""
        return cls(trial=trial, seed=seed, passed=False, error=error)


@dataclass
class CheckReport:
    """All trials of one check."""

    check: CheckId
    records: list[TrialRecord] = field(default_factory=list)
    informational: bool = False
    """Ratios are reported but never counted as violations."""

    runtime_ms: float | None = None

    @property
    def trials(self) -> int:
        return len(self.records)

    @property
    def errors(self) -> int:
        return sum(1 for r in self.records if not r.success)

    @property
    def violations(self) -> int:
        if self.informational:
            return 0
        return sum(1 for r in self.records if r.success and not r.passed)

    @property
    def failed(self) -> bool:
        """True when any trial violated the check or raised."""
        return self.violations > 0 or self.errors > 0

    @property
    def worst_margin(self) -> float | None:
        margins = [r.margin for r in self.records if r.success]
        return min(margins) if margins else None

    @property
    def empirical_constant(self) -> float | None:
        """Largest lhs / rhs over trials with a positive rhs."""
        ratios = [r.ratio for r in self.records if r.success and r.ratio is not None]
        return max(ratios) if ratios else None

    @property
    def pass_rate(self) -> float:
        if not self.records:
            return 0.0
        return sum(1 for r in self.records if r.success and r.passed) / len(self.records)

    def merge(self, other: CheckReport) -> CheckReport:
        """Combine two reports of the same check, ordered by trial index."""
        if other.check != self.check:
            raise HarnessError(f"Cannot merge {other.check.value} into {self.check.value}")
        runtime = None
        if self.runtime_ms is not None or other.runtime_ms is not None:
            runtime = (self.runtime_ms or 0.0) + (other.runtime_ms or 0.0)
        return CheckReport(
            check=self.check,
            records=sorted([*self.records, *other.records], key=lambda r: (r.trial, r.seed)),
            informational=self.informational,
            runtime_ms=runtime,
        )

    def summary(self) -> dict[str, Any]:
        """Aggregate fields without the per-trial records."""
        result: dict[str, Any] = {
            "check": self.check.value,
            "trials": self.trials,
            "violations": self.violations,
            "errors": self.errors,
            "pass_rate": self.pass_rate,
            "worst_margin": self.worst_margin,
            "empirical_constant": self.empirical_constant,
            "informational": self.informational,
        }
        if self.runtime_ms is not None:
            result["runtime_ms"] = self.runtime_ms
        return result

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        result = self.summary()
        result["seeds"] = [r.seed for r in self.records]
        result["records"] = [r.to_dict() for r in self.records]
        return result


def aggregate(reports: Iterable[CheckReport]) -> dict[str, Any]:
    """Summary document over reports, one entry per check id in sorted order.

    Reports of the same check are merged with their trial counts summed.

    Raises:
        HarnessError: If no reports are given
    """
    merged: dict[CheckId, CheckReport] = {}
    for report in reports:
        existing = merged.get(report.check)
        merged[report.check] = report if existing is None else existing.merge(report)
    if not merged:
        raise HarnessError("Nothing to aggregate: no reports")

    ordered = [merged[check] for check in sorted(merged, key=lambda c: c.value)]
    return {
        "checks": [r.summary() for r in ordered],
        "total_trials": sum(r.trials for r in ordered),
        "total_violations": sum(r.violations for r in ordered),
        "total_errors": sum(r.errors for r in ordered),
        "mmd_convention": "MMD equals the L2 norm of F(x,D) applied to the difference measure",
    }


def write_reports(reports: list[CheckReport], out_dir: Path) -> list[Path]:
    """Write report_<check>.json per check and summary.json.

    Returns:
        Paths written, summary last
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for report in reports:
        path = out_dir / f"report_{report.check.value}.json"
        path.write_text(json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8")
        paths.append(path)
    summary = out_dir / "summary.json"
    summary.write_text(json.dumps(aggregate(reports), indent=2) + "\n", encoding="utf-8")
    paths.append(summary)
    return paths
