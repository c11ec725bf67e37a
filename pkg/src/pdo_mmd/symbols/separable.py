"""Separable and dense symbols F(x, y) and their pointwise algebra.

A separable symbol is a finite sum F(x, y) = sum_i c_i f_i(x) g_i(y) whose
factors are analytic descriptors or grid functions. A dense symbol stores the
matrix F(x_i, y_j) over the lattices of a feature grid and a data grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from pdo_mmd.exceptions import GridMismatch
from pdo_mmd.numgrid import ComplexArray, Grid, GridFunction
from pdo_mmd.symbols.terms import (
    Constant,
    GaussHermite,
    Indicator,
    PolyGauss,
    SpectralRoot,
    as_point_array,
)

AnalyticFactor = GaussHermite | PolyGauss | Indicator | Constant | SpectralRoot
Factor = AnalyticFactor | GridFunction

# Relative singular-value cutoff for the feature dimension
_FEATURE_RANK_RTOL = 1e-10


def factor_values(factor: Factor, points: npt.ArrayLike) -> ComplexArray:
    """Evaluate a factor; grid functions use nearest-lattice lookup."""
    if isinstance(factor, GridFunction):
        return factor.sample(points, method="nearest", outside="raise")
    return factor.evaluate(points)


def factor_on_grid(factor: Factor, grid: Grid) -> GridFunction:
    """Sample a factor on every lattice point of ``grid``.

    Raises:
        GridMismatch: If a grid-function factor lives on another lattice
    """
    if isinstance(factor, GridFunction):
        grid.require_compatible(factor.grid, "factor grid")
        return factor
    return GridFunction(grid, factor.evaluate(grid.lattice()))


@dataclass(frozen=True)
class SeparableTerm:
    """One rank-one term c * f(x) * g(y)."""

    f: Factor
    g: Factor
    coef: complex = 1.0


@dataclass(frozen=True)
class SeparableSymbol:
    """Finite sum of rank-one terms. An empty sum is the zero symbol."""

    terms: tuple[SeparableTerm, ...] = ()

    @property
    def rank(self) -> int:
        """Number of terms l."""
        return len(self.terms)

    @classmethod
    def single(cls, f: Factor, g: Factor, coef: complex = 1.0) -> SeparableSymbol:
        return cls((SeparableTerm(f, g, coef),))


@dataclass(frozen=True, eq=False)
class DenseSymbol:
    """F sampled on grid_x (rows) times grid_y (columns)."""

    grid_x: Grid
    grid_y: Grid
    values: ComplexArray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.complex128)
        expected = (self.grid_x.size, self.grid_y.size)
        if values.shape != expected:
            raise GridMismatch(f"Dense symbol of shape {values.shape}, grids need {expected}")
        if not np.all(np.isfinite(values)):
            raise ValueError("DenseSymbol entries must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, grid_x: Grid, grid_y: Grid) -> DenseSymbol:
        return cls(grid_x, grid_y, np.zeros((grid_x.size, grid_y.size), dtype=np.complex128))

    def lookup(self, x: npt.ArrayLike, y: npt.ArrayLike) -> ComplexArray:
        """Nearest-lattice values at paired points (x_k, y_k)."""
        rows = self.grid_x.locate(x)
        cols = self.grid_y.locate(y)
        return np.asarray(self.values[rows, cols], dtype=np.complex128)


Symbol = SeparableSymbol | DenseSymbol


# -----------------------------------------------------------------------------
# Evaluation
# -----------------------------------------------------------------------------
def evaluate_pairs(sym: Symbol, x: npt.ArrayLike, y: npt.ArrayLike) -> ComplexArray:
    """F(x_k, y_k) for paired point arrays.

    Raises:
        OutOfDomain: If a grid-backed factor is queried outside its box
    """
    if isinstance(sym, DenseSymbol):
        return sym.lookup(x, y)
    xs, ys = as_point_array(x), as_point_array(y)
    out = np.zeros(len(xs), dtype=np.complex128)
    for term in sym.terms:
        out += term.coef * factor_values(term.f, xs) * factor_values(term.g, ys)
    return out


def evaluate(sym: Symbol, x: npt.ArrayLike, y: npt.ArrayLike) -> complex:
    """F(x, y) at a single pair of points."""
    xs = np.asarray(x, dtype=np.float64).reshape(1, -1)
    ys = np.asarray(y, dtype=np.float64).reshape(1, -1)
    return complex(evaluate_pairs(sym, xs, ys)[0])


def densify(sym: Symbol, grid_x: Grid, grid_y: Grid) -> DenseSymbol:
    """Matrix of F over the lattice pairs of two grids.

    A dense symbol is returned unchanged when it already lives on these grids.

    Raises:
        GridMismatch: For a dense symbol on other grids
    """
    if isinstance(sym, DenseSymbol):
        grid_x.require_compatible(sym.grid_x, "feature grids")
        grid_y.require_compatible(sym.grid_y, "data grids")
        return sym
    values = np.zeros((grid_x.size, grid_y.size), dtype=np.complex128)
    for term in sym.terms:
        f = factor_on_grid(term.f, grid_x).values
        g = factor_on_grid(term.g, grid_y).values
        values += term.coef * np.outer(f, g)
    return DenseSymbol(grid_x, grid_y, values)


# -----------------------------------------------------------------------------
# Linear combinations
# -----------------------------------------------------------------------------
def scale(sym: Symbol, c: complex) -> Symbol:
    """c * F."""
    if isinstance(sym, DenseSymbol):
        return DenseSymbol(sym.grid_x, sym.grid_y, c * sym.values)
    return SeparableSymbol(tuple(SeparableTerm(t.f, t.g, c * t.coef) for t in sym.terms))


def negate(sym: Symbol) -> Symbol:
    return scale(sym, -1.0)


def add(a: Symbol, b: Symbol) -> Symbol:
    """Pointwise sum.

    Two separable symbols concatenate their terms. Otherwise the separable
    operand is densified on the dense operand's grids.

    Raises:
        GridMismatch: If two dense symbols live on different grids
    """
    if isinstance(a, DenseSymbol):
        grid_x, grid_y = a.grid_x, a.grid_y
    elif isinstance(b, DenseSymbol):
        grid_x, grid_y = b.grid_x, b.grid_y
    else:
        return SeparableSymbol(a.terms + b.terms)
    values = densify(a, grid_x, grid_y).values + densify(b, grid_x, grid_y).values
    return DenseSymbol(grid_x, grid_y, values)


def subtract(a: Symbol, b: Symbol) -> Symbol:
    """a - b."""
    return add(a, negate(b))


# -----------------------------------------------------------------------------
# Structure
# -----------------------------------------------------------------------------
def feature_dimension(sym: SeparableSymbol, grid_y: Grid) -> int:
    """Dimension of the span of the nonzero-coefficient g_i on the data grid."""
    columns = [factor_on_grid(t.g, grid_y).values for t in sym.terms if t.coef != 0]
    if not columns:
        return 0
    sv = np.linalg.svd(np.stack(columns, axis=1), compute_uv=False)
    if sv[0] == 0.0:
        return 0
    return int(np.sum(sv > _FEATURE_RANK_RTOL * sv[0]))


def is_zero(sym: Symbol, grid: Grid) -> bool:
    """Whether F vanishes identically on the feature grid times its dual."""
    if isinstance(sym, SeparableSymbol) and all(t.coef == 0 for t in sym.terms):
        return True
    return not np.any(densify(sym, grid, grid.dual()).values)
