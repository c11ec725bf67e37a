"""Operator norms of discretized operators."""

from __future__ import annotations

import numpy as np

from pdo_mmd.numgrid import FloatArray, Grid, NormKind, norm
from pdo_mmd.spectral.operators import OperatorMatrix
from pdo_mmd.symbols import SeparableSymbol, factor_on_grid


def row_norms(op: OperatorMatrix) -> FloatArray:
    """L2 norm of every Schwartz-kernel row, sqrt(sum_j |k_ij|^2 w_j)."""
    squared = np.sum(np.abs(op.entries) ** 2, axis=1) / op.input_weight
    return np.asarray(op.norm_scale * np.sqrt(squared), dtype=np.float64)


def two_inf_norm(op: OperatorMatrix) -> float:
    """(2, inf) norm: the largest row norm of the Schwartz kernel."""
    return float(row_norms(op).max(initial=0.0))


def schwartz_diagonal(op: OperatorMatrix) -> FloatArray:
    """Diagonal of the Schwartz kernel of op @ op^H."""
    return row_norms(op) ** 2


def hs_norm(op: OperatorMatrix) -> float:
    """Hilbert-Schmidt norm sqrt(sum |k_ij|^2 w_i w_j)."""
    total = np.sum(np.abs(op.entries) ** 2) * op.output_weight / op.input_weight
    return float(op.norm_scale * np.sqrt(total))


def separable_bound(sym: SeparableSymbol, grid: Grid) -> float:
    """sum_i |c_i| ||f_i||_2 ||g_i||_inf, the bound on the (2, inf) norm of F(D, x)."""
    data_grid = grid.dual()
    return float(
        sum(
            abs(t.coef)
            * norm(factor_on_grid(t.f, grid), NormKind.L2)
            * norm(factor_on_grid(t.g, data_grid), NormKind.LINF)
            for t in sym.terms
        )
    )
