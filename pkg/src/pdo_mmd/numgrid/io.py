"""CSV serialization of grid functions.

Format: header row ``x1[,x2],re,im`` then one row per lattice point in
row-major order, floats written with 17 significant digits.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from pdo_mmd.exceptions import InvalidGrid
from pdo_mmd.numgrid.grid import GridFunction, make_grid

FLOAT_FORMAT = "%.17g"


def grid_function_header(dim: int) -> str:
    return ",".join([f"x{axis + 1}" for axis in range(dim)] + ["re", "im"])


def write_grid_function(f: GridFunction, path: Path) -> Path:
    """Write a grid function as CSV and return the path."""
    table = np.column_stack([f.grid.lattice(), f.real, f.imag])
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(
        path,
        table,
        fmt=FLOAT_FORMAT,
        delimiter=",",
        header=grid_function_header(f.grid.dim),
        comments="",
    )
    return path


def read_grid_function(path: Path) -> GridFunction:
    """Read a grid function CSV, reconstructing and validating its grid.

    Raises:
        InvalidGrid: If the coordinates do not form a valid symmetric lattice
        ValueError: If the file is not numeric CSV
    """
    with path.open(encoding="utf-8") as handle:
        header = handle.readline().strip().split(",")
    dim = len(header) - 2
    if dim not in (1, 2) or header[-2:] != ["re", "im"]:
        raise InvalidGrid(f"{path}: expected header x1[,x2],re,im, got {','.join(header)}")

    table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    coords = table[:, :dim]
    n = round(len(table) ** (1.0 / dim))
    half_widths = [-float(coords[:, axis].min()) for axis in range(dim)]
    grid = make_grid(dim, n, half_widths)
    atol = 1e-9 * max(half_widths)
    if grid.size != len(table) or not np.allclose(coords, grid.lattice(), rtol=0.0, atol=atol):
        raise InvalidGrid(f"{path}: coordinates do not form a row-major {dim}D lattice")
    return GridFunction(grid, table[:, dim] + 1j * table[:, dim + 1])
