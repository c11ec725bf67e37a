"""Factory functions for creating test data.

This module provides factory functions for:
- Working grids and analytic symbols
- Seeded sample sets and gridded Gaussian densities
- Symbol, sample and density files for CLI tests
- Small harness instance specs

Design principles:
- Factories provide sensible defaults that can be overridden
- Everything random takes an explicit seed
- File factories write into a directory the test owns and return the path
"""

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from pdo_mmd.harness import InstanceSpec
from pdo_mmd.mmd import SampleSet, write_samples
from pdo_mmd.numgrid import Grid, GridFunction, make_grid, write_grid_function
from pdo_mmd.symbols import Constant, GaussHermite, SeparableSymbol, SeparableTerm

GRID_N = 128
GRID_HALF_WIDTH = 16.0
GRID_2D_N = 16
GRID_2D_HALF_WIDTH = 6.0


# -----------------------------------------------------------------------------
# Grids and symbols
# -----------------------------------------------------------------------------
def make_test_grid(dim: int = 1, n: int | None = None, half_width: float | None = None) -> Grid:
    """Small feature grid for the given dimension."""
    if dim == 2:
        return make_grid(2, n or GRID_2D_N, half_width or GRID_2D_HALF_WIDTH)
    return make_grid(1, n or GRID_N, half_width or GRID_HALF_WIDTH)


def make_gaussian_symbol(width: float = 1.0, coef: complex = 1.0) -> SeparableSymbol:
    """c * exp(-x^2 / 2w^2) * 1."""
    return SeparableSymbol.single(GaussHermite(width=width), Constant(value=1.0), coef)


def make_separable_symbol(
    rank: int = 2,
    seed: int = 0,
    *,
    feature_g: bool = False,
) -> SeparableSymbol:
    """Random Gauss-Hermite symbol of the given rank.

    Args:
        rank: Number of terms
        seed: Seed of the coefficient and width draws
        feature_g: Use Gauss-Hermite data factors instead of constants
    """
    rng = np.random.default_rng(seed)
    terms = []
    for i in range(rank):
        f = GaussHermite(degree=i % 3, width=float(rng.uniform(0.7, 1.3)))
        g: GaussHermite | Constant = (
            GaussHermite(degree=(i + 1) % 2, width=float(rng.uniform(1.0, 2.0)))
            if feature_g
            else Constant(value=1.0)
        )
        coef = complex(rng.normal(), rng.normal())
        terms.append(SeparableTerm(f, g, coef))
    return SeparableSymbol(tuple(terms))


def make_rank_two_symbol(s1: float = 2.0, s2: float = 1.0) -> SeparableSymbol:
    """s1 f1(x) g1(y) + s2 f2(x) g2(y) with L2-orthonormal Hermite functions on both sides."""
    h0 = GaussHermite(scale=math.pi**-0.25)
    h1 = GaussHermite(degree=1, scale=math.sqrt(2.0) * math.pi**-0.25)
    return SeparableSymbol((SeparableTerm(h0, h0, s1), SeparableTerm(h1, h1, s2)))


def make_product_gaussian_symbol() -> SeparableSymbol:
    """exp(-x^2/2) exp(-y^2/2)."""
    return SeparableSymbol.single(GaussHermite(), GaussHermite())


def symbol_document(
    sym_terms: list[dict[str, Any]] | None = None,
    grid: Grid | None = None,
) -> dict[str, Any]:
    """Separable symbol JSON document (unit Gaussian by default)."""
    terms = sym_terms or [
        {"f": {"kind": "gauss_hermite", "width": 1.0}, "g": {"kind": "constant"}, "coef": 1.0}
    ]
    grid = grid or make_test_grid()
    return {"type": "separable", "terms": terms, "grid": grid.describe()}


def write_symbol_file(directory: Path, document: dict[str, Any] | None = None) -> Path:
    """Write a symbol JSON file and return its path."""
    path = directory / "symbol_in.json"
    path.write_text(json.dumps(document or symbol_document()), encoding="utf-8")
    return path


# -----------------------------------------------------------------------------
# Harness
# -----------------------------------------------------------------------------
def make_instance_spec(**overrides: Any) -> InstanceSpec:
    """Instance spec on a 64-point grid over [-8, 8), small enough for dense checks."""
    data: dict[str, Any] = {"grid_n": 64, "half_width": 8.0, "rank_max": 2}
    data.update(overrides)
    return InstanceSpec.model_validate(data)


# -----------------------------------------------------------------------------
# Samples and densities
# -----------------------------------------------------------------------------
def make_samples(n: int = 400, mean: float = 0.0, std: float = 1.0, seed: int = 0) -> SampleSet:
    """Seeded 1D Gaussian samples."""
    return SampleSet.normal(n, mean=mean, std=std, seed=seed)


def gaussian_density(grid: Grid, mean: float = 0.0, var: float = 1.0) -> GridFunction:
    """Isotropic Gaussian pdf on ``grid``, renormalized to unit quadrature mass."""
    pts = grid.lattice()
    sq = np.sum((pts - mean) ** 2, axis=1)
    values = np.exp(-sq / (2.0 * var)) / (2.0 * math.pi * var) ** (grid.dim / 2)
    values /= values.sum() * grid.cell_volume
    return GridFunction(grid, values)


def write_sample_file(directory: Path, name: str, samples: SampleSet) -> Path:
    """Write a sample CSV and return its path."""
    return write_samples(samples, directory / name)


def write_density_file(directory: Path, name: str, density: GridFunction) -> Path:
    """Write a density CSV and return its path."""
    return write_grid_function(density, directory / name)
