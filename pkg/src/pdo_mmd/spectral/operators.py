"""Grid matrices of the integral operator O_F and the PDOs F(x, D), F(D, x).

With G the feature grid, G^ = dual(G) the data grid, c = (2pi)^(-d/2),
E_ij = exp(i x_i . y_j), Fwd the forward transform G -> G^ and Inv the
inverse transform G^ -> G:

    integral_OF:  A = F * dy^d                      (G^ -> G)
    pdo_xD:       B = c dy^d (F o E) @ Fwd          (G  -> G)
    pdo_Dx:       C = Fwd @ B^H @ Inv               (G^ -> G^)

B is identity-normalized (F = 1 gives I). Norms of the pdo kinds are reported
for the unnormalized PDO, i.e. scaled by (2pi)^(d/2); see ``norm_scale``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np

from pdo_mmd.numgrid import (
    ComplexArray,
    Grid,
    GridFunction,
    TransformDirection,
    default_grid,
    fourier_matrix,
    phase_matrix,
)
from pdo_mmd.symbols import Symbol, densify


class OperatorKind(StrEnum):
    """Discretized operator built from a symbol."""

    INTEGRAL_OF = "integral_OF"
    """Integral operator with kernel F(x, y)."""

    PDO_XD = "pdo_xD"
    """F(x, D): u -> c * integral F(x, y) u^(y) exp(i x.y) dy."""

    PDO_DX = "pdo_Dx"
    """F(D, x): Fourier conjugate of F(x, D)^H."""


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Quadrature-weighted matrix of a discretized operator.

    ``entries @ u`` approximates the continuous action on the samples of u
    on ``grid_in``; the result lives on ``grid_out``.
    """

    kind: OperatorKind
    grid_x: Grid
    grid_y: Grid
    entries: ComplexArray = field(repr=False)

    @property
    def grid_in(self) -> Grid:
        return self.grid_x if self.kind is OperatorKind.PDO_XD else self.grid_y

    @property
    def grid_out(self) -> Grid:
        return self.grid_y if self.kind is OperatorKind.PDO_DX else self.grid_x

    @property
    def input_weight(self) -> float:
        """Quadrature weight of the input lattice."""
        return self.grid_in.cell_volume

    @property
    def output_weight(self) -> float:
        return self.grid_out.cell_volume

    @property
    def norm_scale(self) -> float:
        """Factor relating the matrix to the operator whose norms are reported."""
        if self.kind is OperatorKind.INTEGRAL_OF:
            return 1.0
        return (2.0 * math.pi) ** (self.grid_x.dim / 2)

    @property
    def kernel(self) -> ComplexArray:
        """Schwartz-kernel samples: entries without the input weight."""
        return self.entries / self.input_weight

    def apply(self, u: GridFunction) -> GridFunction:
        """Apply to a grid function on ``grid_in``."""
        self.grid_in.require_compatible(u.grid, "operator input")
        return GridFunction(self.grid_out, self.entries @ u.values)


def _pdo_xd(values: ComplexArray, grid_x: Grid, grid_y: Grid) -> ComplexArray:
    c = (2.0 * math.pi) ** (-grid_x.dim / 2) * grid_y.cell_volume
    forward = fourier_matrix(grid_x, TransformDirection.FORWARD)
    return np.asarray(c * (values * phase_matrix(grid_x, grid_y)) @ forward)


def build_operator(
    sym: Symbol,
    kind: OperatorKind | str,
    grid: Grid | None = None,
) -> OperatorMatrix:
    """Discretize a symbol as one of the three operator kinds.

    Args:
        sym: Any symbol; densified on ``grid`` and its dual
        kind: integral_OF, pdo_xD or pdo_Dx
        grid: Feature grid (defaults to the settings grid)

    Raises:
        GridMismatch: If a dense symbol lives on other grids
    """
    op_kind = OperatorKind(kind)
    grid_x = grid or default_grid()
    grid_y = grid_x.dual()
    values = densify(sym, grid_x, grid_y).values

    if op_kind is OperatorKind.INTEGRAL_OF:
        entries = values * grid_y.cell_volume
    elif op_kind is OperatorKind.PDO_XD:
        entries = _pdo_xd(values, grid_x, grid_y)
    else:
        b = _pdo_xd(values, grid_x, grid_y)
        forward = fourier_matrix(grid_x, TransformDirection.FORWARD)
        inverse = fourier_matrix(grid_y, TransformDirection.INVERSE)
        entries = forward @ b.conj().T @ inverse
    return OperatorMatrix(op_kind, grid_x, grid_y, np.asarray(entries, dtype=np.complex128))
