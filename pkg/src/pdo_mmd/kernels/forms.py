"""PDO-based kernels K(s, t) = integral conj(F(x, s)) F(x, t) exp(i x.(t - s)) dx.

Two representations:

- ClosedKernel, for separable symbols:
  K(s, t) = sum_ij conj(c_i g_i(s)) c_j g_j(t) T_ij(t - s)
- GridKernel, for any symbol: the matrix of K over data-grid lattice pairs,
  obtained from the pdo_xD matrix B as (2pi)^d Fwd B^H B Inv / dy^d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from pdo_mmd.kernels.transforms import DEFAULT_PAD, PairTransform, pair_transform
from pdo_mmd.numgrid import (
    ComplexArray,
    Grid,
    GridFunction,
    TransformDirection,
    default_grid,
    fourier_matrix,
)
from pdo_mmd.spectral import OperatorKind, build_operator
from pdo_mmd.symbols import Factor, SeparableSymbol, Symbol, factor_values
from pdo_mmd.symbols.terms import as_point_array

# Rows per block when assembling rectangular kernel matrices
_BLOCK_ROWS = 256


@dataclass(frozen=True)
class KernelTerm:
    """conj(c_i g_i(s)) c_j g_j(t) T_ij(t - s)."""

    g_left: Factor
    g_right: Factor
    coef: complex
    transform: PairTransform


@dataclass(frozen=True)
class ClosedKernel:
    """Kernel of a separable symbol as a sum of pair terms."""

    dim: int
    terms: tuple[KernelTerm, ...] = ()

    def evaluate_pairs(self, s: npt.ArrayLike, t: npt.ArrayLike) -> ComplexArray:
        """K(s_k, t_k) for paired point arrays."""
        ss, ts = as_point_array(s), as_point_array(t)
        out = np.zeros(len(ss), dtype=np.complex128)
        for term in self.terms:
            left = np.conj(factor_values(term.g_left, ss))
            right = factor_values(term.g_right, ts)
            out += term.coef * left * right * term.transform(ts - ss)
        return out

    def matrix(self, a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexArray:
        """K(a_p, b_q) for every pair of points of two sets."""
        pa, pb = as_point_array(a), as_point_array(b)
        out = np.zeros((len(pa), len(pb)), dtype=np.complex128)
        if not self.terms:
            return out
        right_values = [factor_values(t.g_right, pb) for t in self.terms]
        left_values = [np.conj(factor_values(t.g_left, pa)) for t in self.terms]
        for start in range(0, len(pa), _BLOCK_ROWS):
            rows = slice(start, start + _BLOCK_ROWS)
            block = pa[rows]
            diffs = (pb[None, :, :] - block[:, None, :]).reshape(-1, pa.shape[1])
            for k, term in enumerate(self.terms):
                transform = term.transform(diffs).reshape(len(block), len(pb))
                out[rows] += (
                    term.coef * left_values[k][rows, None] * right_values[k][None, :] * transform
                )
        return out


@dataclass(frozen=True, eq=False)
class GridKernel:
    """Kernel matrix over the lattice pairs of the data grid.

    Off-lattice points use the nearest lattice point.
    """

    grid: Grid
    entries: ComplexArray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.grid.dim

    def evaluate_pairs(self, s: npt.ArrayLike, t: npt.ArrayLike) -> ComplexArray:
        return np.asarray(
            self.entries[self.grid.locate(s), self.grid.locate(t)], dtype=np.complex128
        )

    def matrix(self, a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexArray:
        rows = self.grid.locate(a)
        cols = self.grid.locate(b)
        return np.asarray(self.entries[np.ix_(rows, cols)], dtype=np.complex128)


KernelForm = ClosedKernel | GridKernel


def kernel_closed(
    sym: SeparableSymbol,
    grid: Grid | None = None,
    pad: int = DEFAULT_PAD,
) -> ClosedKernel:
    """Closed kernel of a separable symbol.

    Args:
        sym: Separable symbol
        grid: Feature grid for factors without a closed-form pair transform
        pad: Zero-padding factor of the grid path

    Raises:
        TransformUnavailable: If some f_i* f_j has no function transform
    """
    feature_grid = grid or _feature_grid(sym)
    terms = []
    active = [t for t in sym.terms if t.coef != 0]
    for ti in active:
        for tj in active:
            transform = pair_transform(ti.f, tj.f, feature_grid, pad)
            terms.append(KernelTerm(ti.g, tj.g, ti.coef.conjugate() * tj.coef, transform))
    return ClosedKernel(dim=feature_grid.dim, terms=tuple(terms))


def kernel_grid(sym: Symbol, grid: Grid | None = None) -> GridKernel:
    """Kernel matrix on the data grid from the pdo_xD discretization."""
    grid_x = grid or default_grid()
    grid_y = grid_x.dual()
    b = build_operator(sym, OperatorKind.PDO_XD, grid_x).entries
    forward = fourier_matrix(grid_x, TransformDirection.FORWARD)
    inverse = fourier_matrix(grid_y, TransformDirection.INVERSE)
    scale = (2.0 * math.pi) ** grid_x.dim / grid_y.cell_volume
    entries = scale * (forward @ (b.conj().T @ (b @ inverse)))
    entries = 0.5 * (entries + entries.conj().T)
    return GridKernel(grid_y, np.asarray(entries, dtype=np.complex128))


def _feature_grid(sym: SeparableSymbol) -> Grid:
    for term in sym.terms:
        if isinstance(term.f, GridFunction):
            return term.f.grid
    return default_grid()
