"""Nystrom SVD of symbols, rank-r truncation and singular-value functionals."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from pdo_mmd.config import get_settings
from pdo_mmd.exceptions import ConvergenceError, RankOutOfRange
from pdo_mmd.logging import get_logger
from pdo_mmd.numgrid import ComplexArray, FloatArray, Grid, GridFunction, default_grid, make_grid
from pdo_mmd.symbols import SeparableSymbol, SeparableTerm, Symbol, densify

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class SvdResult:
    """F(x, y) = sum_i sigma_i f_i(x) conj(g_i(y)) on a grid pair.

    Columns of ``left`` and ``right`` are orthonormal in the quadrature inner
    products of ``grid_x`` and ``grid_y``.
    """

    sigmas: FloatArray
    left: ComplexArray = field(repr=False)
    right: ComplexArray = field(repr=False)
    grid_x: Grid
    grid_y: Grid

    @property
    def count(self) -> int:
        return len(self.sigmas)

    def left_function(self, i: int) -> GridFunction:
        return GridFunction(self.grid_x, self.left[:, i])

    def right_function(self, i: int) -> GridFunction:
        return GridFunction(self.grid_y, self.right[:, i])

    def reconstruct(self, r: int | None = None) -> ComplexArray:
        """Matrix of the rank-r partial sum (all terms by default)."""
        k = self.count if r is None else r
        return np.asarray(
            (self.left[:, :k] * self.sigmas[:k]) @ self.right[:, :k].conj().T,
            dtype=np.complex128,
        )


def nystrom_svd(sym: Symbol, grid: Grid | None = None) -> SvdResult:
    """SVD of the weight-symmetrized symbol matrix F(x_i, y_j) sqrt(w_x w_y).

    Raises:
        ConvergenceError: If LAPACK fails with both SVD drivers
    """
    grid_x = grid or default_grid()
    grid_y = grid_x.dual()
    wx, wy = grid_x.cell_volume, grid_y.cell_volume
    weighted = densify(sym, grid_x, grid_y).values * math.sqrt(wx * wy)

    try:
        u, s, vh = scipy.linalg.svd(weighted, full_matrices=False, lapack_driver="gesdd")
    except np.linalg.LinAlgError:
        logger.debug("gesdd failed, retrying with gesvd")
        try:
            u, s, vh = scipy.linalg.svd(weighted, full_matrices=False, lapack_driver="gesvd")
        except np.linalg.LinAlgError as e:
            raise ConvergenceError(f"SVD did not converge: {e}") from e

    return SvdResult(
        sigmas=np.asarray(s, dtype=np.float64),
        left=u / math.sqrt(wx),
        right=vh.conj().T / math.sqrt(wy),
        grid_x=grid_x,
        grid_y=grid_y,
    )


def numerical_rank(svd: SvdResult, rtol: float | None = None) -> int:
    """Number of singular values above rtol * sigma_1."""
    rel = get_settings().tolerances.numerical_rank if rtol is None else rtol
    if svd.count == 0 or svd.sigmas[0] == 0.0:
        return 0
    return int(np.sum(svd.sigmas > rel * svd.sigmas[0]))


def _check_rank(svd: SvdResult, r: int) -> None:
    if not 0 <= r <= svd.count:
        raise RankOutOfRange(f"rank {r} outside [0, {svd.count}]")


def truncate(svd: SvdResult, r: int) -> SeparableSymbol:
    """F_r = sum_{i <= r} sigma_i f_i(x) conj(g_i(y)), capped at the numerical rank.

    Raises:
        RankOutOfRange: Unless 0 <= r <= number of singular values
    """
    _check_rank(svd, r)
    keep = min(r, numerical_rank(svd))
    terms = tuple(
        SeparableTerm(
            svd.left_function(i),
            svd.right_function(i).conj(),
            float(svd.sigmas[i]),
        )
        for i in range(keep)
    )
    return SeparableSymbol(terms)


def tail_sum(svd: SvdResult, r: int, power: int = 1) -> float:
    """sum_{i > r} sigma_i^power for power 1 or 2.

    Raises:
        RankOutOfRange: Unless 0 <= r <= number of singular values
    """
    _check_rank(svd, r)
    if power not in (1, 2):
        raise ValueError(f"power must be 1 or 2, got {power}")
    return float(np.sum(svd.sigmas[r:] ** power))


def retained_variance(svd: SvdResult, r: int) -> float:
    """Fraction of sum sigma^2 carried by the first r singular values."""
    _check_rank(svd, r)
    total = float(np.sum(svd.sigmas**2))
    if total == 0.0:
        return 1.0
    return float(np.sum(svd.sigmas[:r] ** 2)) / total


@dataclass(frozen=True)
class CfProfile:
    """sup-to-L2 ratios of the leading right singular functions."""

    constant: float
    """Largest ratio over the profile."""

    ratios: tuple[float, ...]
    """||g_i||_inf / ||g_i||_2 for i = 1..r_max."""


def c_f_constant(svd: SvdResult, r_max: int) -> CfProfile:
    """C_F estimate over the first ``r_max`` right singular functions.

    Raises:
        RankOutOfRange: If r_max exceeds the numerical rank
    """
    rank = numerical_rank(svd)
    if not 0 <= r_max <= rank:
        raise RankOutOfRange(f"r_max {r_max} outside [0, {rank}] (numerical rank)")
    w = svd.grid_y.cell_volume
    ratios = []
    for i in range(r_max):
        g = svd.right[:, i]
        sup = float(np.abs(g).max())
        l2 = float(np.sqrt(np.sum(np.abs(g) ** 2) * w))
        ratios.append(sup / l2)
    return CfProfile(constant=max(ratios, default=0.0), ratios=tuple(ratios))


@dataclass(frozen=True)
class CfGrowth:
    """C_F at two resolutions of the same box."""

    coarse: float
    fine: float
    growth: float
    likely_unbounded: bool

    def to_dict(self) -> dict[str, float | bool]:
        return {
            "coarse": self.coarse,
            "fine": self.fine,
            "growth": self.growth,
            "likely_unbounded": self.likely_unbounded,
        }


def c_f_growth(sym: Symbol, grid: Grid, r_max: int, factor: float = 2.0) -> CfGrowth:
    """Compare C_F on ``grid`` and on a grid with twice the points per axis.

    Growth above ``factor`` flags C_F as likely unbounded in the continuum.
    """
    fine_grid = make_grid(grid.dim, 2 * grid.points_per_axis, grid.half_width)
    coarse = c_f_constant(nystrom_svd(sym, grid), r_max).constant
    fine = c_f_constant(nystrom_svd(sym, fine_grid), r_max).constant
    growth = fine / coarse if coarse > 0.0 else 1.0
    flagged = growth > factor
    if flagged:
        logger.warning("C_F grew by {:.2f}x under refinement: likely unbounded", growth)
    return CfGrowth(coarse=coarse, fine=fine, growth=growth, likely_unbounded=flagged)
