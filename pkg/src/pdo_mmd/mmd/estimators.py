"""MMD estimators.

The MMD of the PDO-based kernel of F equals the L2 norm of
h_u - h_v, where

    h_u(x) = integral F(x, y) exp(i x.y) u(dy) = sum_i c_i f_i(x) phi_i(x),
    phi_i(x) = E_{Y~u}[g_i(Y) exp(i x.Y)].

The spectral estimator evaluates this on the feature grid with empirical
measures, the density estimator with gridded densities, and the Gram
estimators through kernel evaluations at sample pairs.
"""

from __future__ import annotations

import math
from typing import Any, Literal

import numpy as np

from pdo_mmd.config import get_settings
from pdo_mmd.exceptions import NotADensity
from pdo_mmd.kernels import KernelForm
from pdo_mmd.logging import get_logger
from pdo_mmd.mmd.results import GridWarning, MmdEstimate, MmdMethod
from pdo_mmd.mmd.samples import SampleSet
from pdo_mmd.numgrid import (
    Grid,
    GridFunction,
    NormKind,
    TransformDirection,
    default_grid,
    fourier,
    integrate,
    norm,
    phase_matrix,
)
from pdo_mmd.symbols import (
    DenseSymbol,
    Factor,
    SeparableSymbol,
    Symbol,
    densify,
    factor_on_grid,
    factor_values,
)

logger = get_logger(__name__)

# Samples per block when summing exp(i x.Y)
_SAMPLE_BLOCK = 1024


def weighted_char_fn(s: SampleSet, g: Factor, grid: Grid) -> GridFunction:
    """phi(x) = (1/N) sum_k g(Y_k) exp(i x.Y_k) on the lattice of ``grid``."""
    x = grid.lattice()
    weights = factor_values(g, s.points)
    acc = np.zeros(grid.size, dtype=np.complex128)
    for start in range(0, s.size, _SAMPLE_BLOCK):
        block = s.points[start : start + _SAMPLE_BLOCK]
        acc += np.exp(1j * (x @ block.T)) @ weights[start : start + _SAMPLE_BLOCK]
    return GridFunction(grid, acc / s.size)


def embedding(s: SampleSet, sym: SeparableSymbol, grid: Grid) -> GridFunction:
    """h(x) = sum_i c_i f_i(x) phi_i(x) for the empirical measure of ``s``."""
    acc = GridFunction.zeros(grid)
    cache: dict[int, GridFunction] = {}
    for term in sym.terms:
        if term.coef == 0:
            continue
        phi = cache.get(id(term.g))
        if phi is None:
            phi = cache[id(term.g)] = weighted_char_fn(s, term.g, grid)
        acc = acc + factor_on_grid(term.f, grid) * phi * term.coef
    return acc


def grid_warnings(grid: Grid, *sample_sets: SampleSet) -> tuple[GridWarning, ...]:
    """GRID_TOO_COARSE when radius * spacing > pi/4 for any sample set."""
    radius = max(s.radius for s in sample_sets)
    if radius * max(grid.spacing) > math.pi / 4:
        logger.warning(
            "Feature grid spacing {:.4g} too coarse for sample radius {:.4g}",
            max(grid.spacing),
            radius,
        )
        return (GridWarning.GRID_TOO_COARSE,)
    return ()


def _metadata(grid: Grid, su: SampleSet, sv: SampleSet) -> dict[str, Any]:
    return {
        "grid": grid.describe(),
        "n": su.size,
        "m": sv.size,
        "seed_u": su.seed,
        "seed_v": sv.seed,
    }


def mmd_spectral(
    su: SampleSet,
    sv: SampleSet,
    sym: SeparableSymbol,
    grid: Grid | None = None,
) -> MmdEstimate:
    """MMD as || h_u - h_v ||_2 on the feature grid."""
    feature_grid = grid or default_grid(su.dim)
    diff = embedding(su, sym, feature_grid) - embedding(sv, sym, feature_grid)
    squared = norm(diff, NormKind.L2) ** 2
    return MmdEstimate.from_squared(
        squared,
        MmdMethod.SPECTRAL,
        metadata=_metadata(feature_grid, su, sv),
        warnings=grid_warnings(feature_grid, su, sv),
    )


def mmd_gram(
    su: SampleSet,
    sv: SampleSet,
    kernel: KernelForm,
    statistic: Literal["v", "u"] = "v",
) -> MmdEstimate:
    """Gram-form estimate mean K(X,X') + mean K(Y,Y') - 2 Re mean K(X,Y).

    The V-statistic keeps the diagonals and is clamped at 0; the U-statistic
    drops them and needs at least two samples per set.

    Raises:
        OutOfDomain: If the kernel cannot be evaluated at a sample pair
        ValueError: For a U-statistic with a single-sample set
    """
    x, y = su.points, sv.points
    kxx, kyy = kernel.matrix(x, x), kernel.matrix(y, y)
    cross = 0.5 * (kernel.matrix(x, y).real.mean() + kernel.matrix(y, x).real.mean())

    if statistic == "v":
        self_terms = kxx.real.mean() + kyy.real.mean()
        squared = max(float(self_terms - 2.0 * cross), 0.0)
        method = MmdMethod.GRAM_V
    elif statistic == "u":
        n, m = su.size, sv.size
        if n < 2 or m < 2:
            raise ValueError("U-statistic needs at least two samples per set")
        within_x = (kxx.real.sum() - np.trace(kxx).real) / (n * (n - 1))
        within_y = (kyy.real.sum() - np.trace(kyy).real) / (m * (m - 1))
        squared = float(within_x + within_y - 2.0 * cross)
        method = MmdMethod.GRAM_U
    else:
        raise ValueError(f"statistic must be 'v' or 'u', got {statistic!r}")

    metadata = {"n": su.size, "m": sv.size, "seed_u": su.seed, "seed_v": sv.seed}
    return MmdEstimate.from_squared(squared, method, metadata=metadata)


def check_density(u: GridFunction, name: str = "density", tol: float | None = None) -> None:
    """Raise NotADensity unless u is nonnegative and integrates to one."""
    mass_tol = get_settings().tolerances.density_mass if tol is None else tol
    scale = float(np.abs(u.values).max(initial=0.0))
    if float(u.real.min()) < -mass_tol * scale or float(np.abs(u.imag).max()) > mass_tol * scale:
        raise NotADensity(f"{name} has negative or imaginary values")
    mass = integrate(u).real
    if abs(mass - 1.0) > mass_tol:
        raise NotADensity(f"{name} integrates to {mass:.9f}, expected 1")


def density_embedding(u: GridFunction, sym: Symbol, grid: Grid) -> GridFunction:
    """h(x) = integral F(x, y) exp(i x.y) u(y) dy by quadrature on the data grid."""
    data_grid = grid.dual()
    data_grid.require_compatible(u.grid, "density grid")
    dim = grid.dim
    if isinstance(sym, DenseSymbol):
        values = densify(sym, grid, data_grid).values
        weighted = (values * phase_matrix(grid, data_grid)) @ u.values
        return GridFunction(grid, weighted * data_grid.cell_volume)

    acc = GridFunction.zeros(grid)
    for term in sym.terms:
        if term.coef == 0:
            continue
        g = factor_on_grid(term.g, data_grid)
        phi = fourier(g * u, TransformDirection.INVERSE) * (2.0 * math.pi) ** (dim / 2)
        acc = acc + factor_on_grid(term.f, grid) * phi * term.coef
    return acc


def mmd_density(
    u: GridFunction,
    v: GridFunction,
    sym: Symbol,
    grid: Grid | None = None,
    check: bool = True,
) -> MmdEstimate:
    """Deterministic quadrature MMD between two gridded densities.

    Args:
        u, v: Densities on the data grid
        sym: Any symbol
        grid: Feature grid (defaults to the dual of the densities' grid)
        check: Validate that u and v are densities

    Raises:
        NotADensity: If u or v is negative or does not integrate to one
    """
    feature_grid = grid or u.grid.dual()
    if check:
        check_density(u, "u")
        check_density(v, "v")
    diff = density_embedding(u - v, sym, feature_grid)
    squared = norm(diff, NormKind.L2) ** 2
    return MmdEstimate.from_squared(
        squared,
        MmdMethod.DENSITY_GRID,
        metadata={"grid": feature_grid.describe()},
    )
