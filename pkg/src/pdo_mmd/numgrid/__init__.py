"""Numerical substrate: grids, unitary Fourier transforms and quadrature.

This module provides:
- Grid / GridFunction: uniform symmetric lattices and sampled complex functions
- fourier: unitary angular transform onto the dual grid
- integrate / inner_product / norm: Riemann-sum quadrature
- CSV serialization of grid functions
"""

from .fourier import (
    TransformDirection,
    fourier,
    fourier_matrix,
    phase_matrix,
    transform_array,
)
from .grid import ComplexArray, FloatArray, Grid, GridFunction, default_grid, make_grid
from .io import read_grid_function, write_grid_function
from .quadrature import NormKind, inner_product, integrate, norm

__all__ = [
    # Grids
    "Grid",
    "GridFunction",
    "make_grid",
    "default_grid",
    "ComplexArray",
    "FloatArray",
    # Transforms
    "TransformDirection",
    "fourier",
    "fourier_matrix",
    "phase_matrix",
    "transform_array",
    # Quadrature
    "NormKind",
    "inner_product",
    "integrate",
    "norm",
    # Serialization
    "read_grid_function",
    "write_grid_function",
]
