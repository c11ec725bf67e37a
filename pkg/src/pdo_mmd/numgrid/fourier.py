"""Unitary angular Fourier transform on symmetric lattices.

Convention::

    F[f](y) = (2pi)^(-d/2) ∫ f(x) exp(-i y.x) dx

approximated by the Riemann sum on the lattice x_k = -a + k dx and evaluated
on the dual lattice y_m = -pi/dx + m dy with dx dy = 2pi/n. Expanding the
exponent gives

    y_m x_k = 2pi m k / n - pi m - pi k + pi n / 2

and for n a power of two >= 8 the last phase is 1, so both lattice offsets
reduce to the sign pattern s_k = (-1)^k applied before and after the DFT::

    forward:  F_m = (dx / sqrt(2pi))^d       s_m FFT [s_k f_k]
    inverse:  f_k = (dy / sqrt(2pi))^d n^d   s_k IFFT[s_m F_m]

The inverse is the exact discrete inverse of the forward transform and both
are unitary with respect to the quadrature inner products of their grids.
"""

from __future__ import annotations

import math
from enum import StrEnum

import numpy as np
import numpy.typing as npt
from scipy import fft as sfft

from pdo_mmd.numgrid.grid import ComplexArray, Grid, GridFunction


class TransformDirection(StrEnum):
    """Direction of a Fourier transform."""

    FORWARD = "forward"
    INVERSE = "inverse"


def transform_array(
    values: npt.ArrayLike,
    grid: Grid,
    direction: TransformDirection | str,
    axis: int = 0,
) -> ComplexArray:
    """Transform samples stored along ``axis`` of an array.

    ``grid`` is the lattice the input lives on; the output lives on
    ``grid.dual()``. Extra axes are transformed independently, which lets the
    spectral module transform whole matrices at once.
    """
    kind = TransformDirection(direction)
    arr = np.moveaxis(np.asarray(values, dtype=np.complex128), axis, 0)
    tail = arr.shape[1:]
    if arr.shape[0] != grid.size:
        raise ValueError(f"Axis of length {arr.shape[0]} does not match grid size {grid.size}")

    cube = arr.reshape(grid.shape + tail)
    signs = grid.sign_pattern().reshape(grid.shape + (1,) * len(tail))
    fft_axes = tuple(range(grid.dim))
    scale = math.prod(h / math.sqrt(2.0 * math.pi) for h in grid.spacing)

    if kind is TransformDirection.FORWARD:
        out = sfft.fftn(cube * signs, axes=fft_axes)
    else:
        # norm="forward" leaves the inverse unnormalized (no 1/n^d)
        out = sfft.ifftn(cube * signs, axes=fft_axes, norm="forward")
    out = out * signs * scale
    return np.moveaxis(out.reshape((grid.size,) + tail), 0, axis)


def fourier(f: GridFunction, direction: TransformDirection | str) -> GridFunction:
    """Transform a grid function onto the dual grid."""
    return GridFunction(f.grid.dual(), transform_array(f.values, f.grid, direction))


def fourier_matrix(grid: Grid, direction: TransformDirection | str) -> ComplexArray:
    """Dense matrix of the transform from ``grid`` to ``grid.dual()``.

    Column k is the transform of the k-th lattice delta vector.
    """
    return transform_array(np.eye(grid.size, dtype=np.complex128), grid, direction)


def phase_matrix(grid_x: Grid, grid_y: Grid) -> ComplexArray:
    """Matrix of exp(i x_i . y_j) over the lattices of two grids."""
    return np.asarray(np.exp(1j * (grid_x.lattice() @ grid_y.lattice().T)), dtype=np.complex128)
