"""Gram matrices, PSD diagnostics and kernel-grid files."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import numpy.typing as npt
import scipy.linalg

from pdo_mmd.config import get_settings
from pdo_mmd.exceptions import GridMismatch
from pdo_mmd.kernels.forms import GridKernel, KernelForm
from pdo_mmd.numgrid import ComplexArray, FloatArray, Grid, make_grid
from pdo_mmd.numgrid.io import FLOAT_FORMAT
from pdo_mmd.symbols.terms import as_point_array


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Kernel evaluated at every pair of a point set."""

    points: FloatArray = field(repr=False)
    entries: ComplexArray = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class PsdReport:
    """Extreme eigenvalues of a Hermitian matrix."""

    min_eig: float
    max_eig: float
    passed: bool

    def to_dict(self) -> dict[str, Any]:
        return {"min_eig": self.min_eig, "max_eig": self.max_eig, "pass": self.passed}


def gram(kernel: KernelForm, points: npt.ArrayLike) -> GramMatrix:
    """Hermitian Gram matrix K(p_a, p_b).

    Raises:
        OutOfDomain: If a point lies outside the kernel's domain
    """
    pts = as_point_array(points)
    entries = kernel.matrix(pts, pts)
    entries = 0.5 * (entries + entries.conj().T)
    return GramMatrix(points=pts, entries=entries)


def psd_check(g: GramMatrix | ComplexArray, rtol: float | None = None) -> PsdReport:
    """Pass iff min_eig >= -rtol * max_eig (rtol defaults to the PSD tolerance)."""
    rel = get_settings().tolerances.psd if rtol is None else rtol
    matrix = g.entries if isinstance(g, GramMatrix) else np.asarray(g, dtype=np.complex128)
    if matrix.size == 0:
        return PsdReport(min_eig=0.0, max_eig=0.0, passed=True)
    eigvals = scipy.linalg.eigvalsh(0.5 * (matrix + matrix.conj().T))
    lo, hi = float(eigvals[0]), float(eigvals[-1])
    return PsdReport(min_eig=lo, max_eig=hi, passed=lo >= -rel * max(hi, 0.0))


# -----------------------------------------------------------------------------
# Kernel grid files
# -----------------------------------------------------------------------------
def write_kernel_grid(kernel: GridKernel, csv_path: Path) -> Path:
    """Write ``s,t,re,im`` rows and a sibling JSON with the grid metadata.

    Returns:
        Path of the JSON metadata file
    """
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    rows, cols = np.indices(kernel.entries.shape)
    table = np.column_stack(
        [rows.ravel(), cols.ravel(), kernel.entries.real.ravel(), kernel.entries.imag.ravel()]
    )
    np.savetxt(
        csv_path,
        table,
        fmt=["%d", "%d", FLOAT_FORMAT, FLOAT_FORMAT],
        delimiter=",",
        header="s,t,re,im",
        comments="",
    )
    meta = {
        "data_grid": kernel.grid.describe(),
        "values_file": csv_path.name,
        "psd": psd_check(kernel.entries).to_dict(),
    }
    meta_path = csv_path.with_suffix(".json")
    meta_path.write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    return meta_path


def read_kernel_grid(meta_path: Path) -> GridKernel:
    """Read a kernel grid written by write_kernel_grid.

    Raises:
        GridMismatch: If the CSV does not cover the data grid
    """
    meta = json.loads(meta_path.read_text(encoding="utf-8"))
    spec = meta["data_grid"]
    grid: Grid = make_grid(int(spec["dim"]), int(spec["n"]), spec["half_width"])
    table = np.atleast_2d(
        np.loadtxt(meta_path.parent / meta["values_file"], delimiter=",", skiprows=1)
    )
    if table.shape != (grid.size**2, 4):
        raise GridMismatch(f"{meta_path}: expected {grid.size**2} kernel entries")
    entries = np.zeros((grid.size, grid.size), dtype=np.complex128)
    entries[table[:, 0].astype(np.intp), table[:, 1].astype(np.intp)] = (
        table[:, 2] + 1j * table[:, 3]
    )
    return GridKernel(grid, entries)
