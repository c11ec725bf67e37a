"""Minimize the spectral MMD between data and a parametric sampler."""

from __future__ import annotations

import math

import numpy as np
import numpy.typing as npt
from scipy.optimize import OptimizeResult, minimize

from pdo_mmd.config import get_settings
from pdo_mmd.exceptions import BudgetExhausted
from pdo_mmd.fit.models import ParametricModel, sample_model
from pdo_mmd.fit.results import FitResult, StopReason
from pdo_mmd.logging import get_logger
from pdo_mmd.mmd import SampleSet, embedding, grid_warnings
from pdo_mmd.numgrid import FloatArray, Grid, GridFunction, NormKind, default_grid, norm
from pdo_mmd.schemas import OptimizerKind
from pdo_mmd.symbols import SeparableSymbol, is_zero

logger = get_logger(__name__)

# Edge length of the initial Nelder-Mead simplex
SIMPLEX_STEP = 0.5

# Backtracking gives up below this step length
_MIN_STEP = 1e-10


class MmdObjective:
    """theta -> MMD(data, model(theta)) with a cached data side.

    Distinct evaluations are counted; one past the budget raises
    BudgetExhausted. The best point seen so far is tracked.
    """

    def __init__(
        self,
        data: SampleSet,
        model: ParametricModel,
        sym: SeparableSymbol,
        grid: Grid,
        budget: int,
    ) -> None:
        self.model = model
        self.sym = sym
        self.grid = grid
        self.budget = budget
        self.data_embedding: GridFunction = embedding(data, sym, grid)
        self.evaluations = 0
        self.best_params: FloatArray = np.array(model.params, dtype=np.float64)
        self.best_value = math.inf
        self._cache: dict[bytes, float] = {}

    def __call__(self, params: npt.ArrayLike) -> float:
        theta = np.asarray(params, dtype=np.float64)
        key = theta.tobytes()
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        if self.evaluations >= self.budget:
            raise BudgetExhausted(f"Budget of {self.budget} evaluations used", self.evaluations)

        samples = sample_model(self.model.with_params(theta))
        value = norm(embedding(samples, self.sym, self.grid) - self.data_embedding, NormKind.L2)
        self.evaluations += 1
        self._cache[key] = value
        if value < self.best_value:
            self.best_value = value
            self.best_params = theta.copy()
        return value


def _nelder_mead(
    objective: MmdObjective, x0: FloatArray, tolerance: float, trajectory: list[float]
) -> StopReason:
    def record(intermediate_result: OptimizeResult) -> None:
        trajectory.append(float(intermediate_result.fun))

    simplex = np.vstack([x0, x0 + SIMPLEX_STEP * np.eye(len(x0))])
    result = minimize(
        objective,
        x0,
        method="Nelder-Mead",
        callback=record,
        options={
            "maxfev": objective.budget,
            "initial_simplex": simplex,
            "xatol": tolerance,
            "fatol": math.inf,
        },
    )
    return StopReason.CONVERGED if result.status == 0 else StopReason.BUDGET_EXHAUSTED


def fd_gradient_step(
    objective: MmdObjective, theta: FloatArray, rel_step: float
) -> FloatArray:
    """Central differences with step rel_step * (1 + |theta_k|)."""
    grad = np.zeros_like(theta)
    for k in range(len(theta)):
        h = rel_step * (1.0 + abs(theta[k]))
        up, down = theta.copy(), theta.copy()
        up[k] += h
        down[k] -= h
        grad[k] = (objective(up) - objective(down)) / (2.0 * h)
    return grad


def _fd_gradient(
    objective: MmdObjective,
    x0: FloatArray,
    tolerance: float,
    rel_step: float,
    trajectory: list[float],
) -> StopReason:
    theta = x0.copy()
    value = objective(theta)
    trajectory.append(value)
    step = 1.0
    while True:
        grad = fd_gradient_step(objective, theta, rel_step)
        if float(np.linalg.norm(grad)) < tolerance:
            return StopReason.CONVERGED
        while step >= _MIN_STEP:
            candidate = theta - step * grad
            trial = objective(candidate)
            if trial < value:
                theta, value = candidate, trial
                trajectory.append(value)
                step *= 2.0
                break
            step *= 0.5
        else:
            return StopReason.STALLED


def fit_mmd(
    data: SampleSet,
    model: ParametricModel,
    sym: SeparableSymbol,
    optimizer: OptimizerKind | str = OptimizerKind.NELDER_MEAD,
    budget: int | None = None,
    grid: Grid | None = None,
    tolerance: float | None = None,
) -> FitResult:
    """Fit model parameters by minimizing the spectral MMD to ``data``.

    Args:
        data: Observed samples
        model: Sampler with its initial parameters and fixed noise
        sym: Separable symbol defining the kernel
        optimizer: nelder_mead or fd_gradient
        budget: Maximum distinct objective evaluations (>= 50)
        grid: Feature grid (defaults to the settings grid of the data dimension)
        tolerance: Simplex diameter / gradient norm convergence threshold

    Returns:
        FitResult with the best parameters seen; an exhausted budget is
        reported through ``stop_reason`` and ``converged=False``
    """
    settings = get_settings().fit
    kind = OptimizerKind(optimizer)
    max_evals = settings.budget if budget is None else budget
    if max_evals < 50:
        raise ValueError(f"budget must be at least 50, got {max_evals}")
    tol = settings.tolerance if tolerance is None else tolerance
    feature_grid = grid or default_grid(data.dim)

    x0 = np.asarray(model.params, dtype=np.float64)
    objective = MmdObjective(data, model, sym, feature_grid, max_evals)
    trajectory: list[float] = []
    warnings: list[str] = [w.value for w in grid_warnings(feature_grid, data)]

    if is_zero(sym, feature_grid):
        logger.warning("Degenerate kernel: zero symbol makes the objective identically 0")
        trajectory.append(objective(x0))
        warnings.append("degenerate kernel")
        reason = StopReason.DEGENERATE
    else:
        logger.info(
            "Fitting {} model with {} (budget {})", model.family.value, kind.value, max_evals
        )
        try:
            if kind is OptimizerKind.NELDER_MEAD:
                trajectory.append(objective(x0))
                reason = _nelder_mead(objective, x0, tol, trajectory)
            else:
                reason = _fd_gradient(objective, x0, tol, settings.fd_step, trajectory)
        except BudgetExhausted as e:
            logger.warning("{}; returning best parameters so far", e)
            reason = StopReason.BUDGET_EXHAUSTED

    best = objective.best_value
    if trajectory and best < trajectory[-1]:
        trajectory.append(best)
    converged = reason in (StopReason.CONVERGED, StopReason.DEGENERATE)
    logger.info(
        "Fit stopped ({}) after {} evaluations, MMD {:.6g}",
        reason.value,
        objective.evaluations,
        best,
    )
    return FitResult(
        params=[float(p) for p in objective.best_params],
        names=model.names,
        initial=[float(p) for p in x0],
        family=model.family.value,
        optimizer=kind.value,
        trajectory=[float(v) for v in _accepted(trajectory)],
        evaluations=objective.evaluations,
        converged=converged,
        stop_reason=reason,
        warnings=warnings,
        seed=model.seed,
    )


def _accepted(values: list[float]) -> list[float]:
    """Running minimum, so the trajectory only records accepted improvements."""
    out: list[float] = []
    for v in values:
        if not out or v < out[-1]:
            out.append(v)
    return out
