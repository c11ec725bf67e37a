"""Uniform lattices and sampled functions.

A Grid spans the half-open box [-half_width, +half_width) on every axis with
``points_per_axis`` samples per axis. Lattice points are ordered row-major
(first axis slowest), which is also the storage order of GridFunction values.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import numpy.typing as npt
from scipy.interpolate import RegularGridInterpolator

from pdo_mmd.exceptions import GridMismatch, InvalidGrid, OutOfDomain

FloatArray = npt.NDArray[np.float64]
ComplexArray = npt.NDArray[np.complex128]
IntArray = npt.NDArray[np.intp]

# Relative tolerance used when comparing derived grid parameters
_GRID_RTOL = 1e-12


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


def _outside_message(point: FloatArray, grid: Grid) -> str:
    return f"Point {point.tolist()} outside grid box of half width {grid.half_width}"


@dataclass(frozen=True, eq=False)
class Grid:
    """Uniform lattice symmetric about the origin."""

    dim: int
    """Number of axes (1 or 2)."""

    points_per_axis: int
    """Samples per axis, a power of two >= 8."""

    half_width: tuple[float, ...]
    """Half width of the box on each axis."""

    @property
    def spacing(self) -> tuple[float, ...]:
        """Lattice spacing on each axis."""
        return tuple(2.0 * a / self.points_per_axis for a in self.half_width)

    @property
    def cell_volume(self) -> float:
        """Quadrature weight of a single lattice cell."""
        return math.prod(self.spacing)

    @property
    def size(self) -> int:
        """Number of lattice points."""
        return int(self.points_per_axis**self.dim)

    @property
    def shape(self) -> tuple[int, ...]:
        """Array shape of the lattice."""
        return (self.points_per_axis,) * self.dim

    def axes(self) -> list[FloatArray]:
        """Coordinates along each axis."""
        n = self.points_per_axis
        return [
            -a + h * np.arange(n, dtype=np.float64)
            for a, h in zip(self.half_width, self.spacing, strict=True)
        ]

    def lattice(self) -> FloatArray:
        """All lattice points as an (size, dim) array in row-major order."""
        mesh = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack([m.reshape(-1) for m in mesh], axis=1)

    def dual(self) -> Grid:
        """Frequency grid: spacing pi/half_width and half width pi/spacing."""
        return Grid(
            dim=self.dim,
            points_per_axis=self.points_per_axis,
            half_width=tuple(math.pi / h for h in self.spacing),
        )

    def refined(self, factor: int = 2) -> Grid:
        """Same box with ``factor`` times more points per axis."""
        return make_grid(self.dim, self.points_per_axis * factor, self.half_width)

    def sign_pattern(self) -> FloatArray:
        """(-1)^(k_1 + ... + k_d) over the lattice, shaped like the grid."""
        k = np.arange(self.points_per_axis)
        signs = np.where(k % 2 == 0, 1.0, -1.0)
        pattern = signs
        for _ in range(self.dim - 1):
            pattern = np.multiply.outer(pattern, signs)
        return np.asarray(pattern, dtype=np.float64)

    def contains(self, points: npt.ArrayLike) -> npt.NDArray[np.bool_]:
        """Mask of points inside the half-open box."""
        pts = self.as_points(points)
        lo = -np.asarray(self.half_width)
        hi = np.asarray(self.half_width)
        return np.all((pts >= lo) & (pts < hi), axis=1)

    def locate(self, points: npt.ArrayLike) -> IntArray:
        """Flat index of the nearest lattice point for each point.

        Raises:
            OutOfDomain: If any point lies outside the half-open box
        """
        pts = self.as_points(points)
        inside = self.contains(pts)
        if not np.all(inside):
            raise OutOfDomain(_outside_message(pts[~inside][0], self))
        n = self.points_per_axis
        offsets = (pts + np.asarray(self.half_width)) / np.asarray(self.spacing)
        idx = np.rint(offsets).astype(np.intp)
        idx = np.clip(idx, 0, n - 1)
        flat = np.zeros(len(pts), dtype=np.intp)
        for axis in range(self.dim):
            flat = flat * n + idx[:, axis]
        return flat

    def compatible(self, other: Grid) -> bool:
        """Check whether two grids describe the same lattice."""
        return (
            self.dim == other.dim
            and self.points_per_axis == other.points_per_axis
            and all(
                math.isclose(a, b, rel_tol=_GRID_RTOL)
                for a, b in zip(self.half_width, other.half_width, strict=True)
            )
        )

    def require_compatible(self, other: Grid, what: str = "grids") -> None:
        """Raise GridMismatch unless ``other`` is the same lattice."""
        if not self.compatible(other):
            raise GridMismatch(f"Incompatible {what}: {self.describe()} vs {other.describe()}")

    def describe(self) -> dict[str, object]:
        """Plain description used in metadata and symbol files."""
        isotropic = len(set(self.half_width)) == 1
        hw: object = self.half_width[0] if isotropic else list(self.half_width)
        return {"dim": self.dim, "n": self.points_per_axis, "half_width": hw}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grid):
            return NotImplemented
        return self.compatible(other)

    def __hash__(self) -> int:
        widths = tuple(round(a, 9) for a in self.half_width)
        return hash((self.dim, self.points_per_axis, widths))

    def as_points(self, points: npt.ArrayLike) -> FloatArray:
        """Coerce points to an (N, dim) float array."""
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, self.dim) if self.dim > 1 else pts.reshape(-1, 1)
        if pts.shape[1] != self.dim:
            raise GridMismatch(f"Points of dimension {pts.shape[1]} on a {self.dim}D grid")
        return pts


def make_grid(dim: int, points_per_axis: int, half_width: float | Sequence[float]) -> Grid:
    """Create a validated Grid.

    Args:
        dim: 1 or 2
        points_per_axis: Power of two, at least 8
        half_width: Positive half width, scalar or one per axis

    Returns:
        Grid with derived spacing

    Raises:
        InvalidGrid: On violated preconditions
    """
    if dim not in (1, 2):
        raise InvalidGrid(f"dim must be 1 or 2, got {dim}")
    if not _is_power_of_two(points_per_axis) or points_per_axis < 8:
        raise InvalidGrid(f"points_per_axis must be a power of two >= 8, got {points_per_axis}")
    if isinstance(half_width, int | float):
        widths = (float(half_width),) * dim
    else:
        widths = tuple(float(a) for a in half_width)
    if len(widths) != dim:
        raise InvalidGrid(f"Expected {dim} half widths, got {len(widths)}")
    if not all(math.isfinite(a) and a > 0 for a in widths):
        raise InvalidGrid(f"half_width must be positive and finite, got {widths}")
    return Grid(dim=dim, points_per_axis=points_per_axis, half_width=widths)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Complex values sampled on every point of a Grid."""

    grid: Grid
    values: ComplexArray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.complex128).reshape(-1)
        if values.shape[0] != self.grid.size:
            raise GridMismatch(f"{values.shape[0]} values for a grid of {self.grid.size} points")
        if not np.all(np.isfinite(values)):
            raise ValueError("GridFunction values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    # Construction -----------------------------------------------------------

    @classmethod
    def from_callable(cls, grid: Grid, fn: Callable[[FloatArray], npt.ArrayLike]) -> GridFunction:
        """Sample ``fn`` (taking an (N, dim) point array) on the lattice."""
        return cls(grid, np.asarray(fn(grid.lattice()), dtype=np.complex128))

    @classmethod
    def zeros(cls, grid: Grid) -> GridFunction:
        return cls(grid, np.zeros(grid.size, dtype=np.complex128))

    @classmethod
    def constant(cls, grid: Grid, value: complex) -> GridFunction:
        return cls(grid, np.full(grid.size, value, dtype=np.complex128))

    # Views ------------------------------------------------------------------

    def as_array(self) -> ComplexArray:
        """Values reshaped to the grid shape."""
        return self.values.reshape(self.grid.shape)

    @property
    def real(self) -> FloatArray:
        return np.asarray(self.values.real, dtype=np.float64)

    @property
    def imag(self) -> FloatArray:
        return np.asarray(self.values.imag, dtype=np.float64)

    def conj(self) -> GridFunction:
        return GridFunction(self.grid, np.conj(self.values))

    def reflected(self) -> GridFunction:
        """f(-x) on the lattice.

        The lattice is symmetric except for the point -half_width, whose mirror
        image lies outside the box; it maps to itself.
        """
        arr = self.as_array()
        for axis in range(self.grid.dim):
            arr = np.roll(np.flip(arr, axis=axis), 1, axis=axis)
        return GridFunction(self.grid, arr.reshape(-1))

    # Arithmetic -------------------------------------------------------------

    def _operand(self, other: GridFunction | complex) -> ComplexArray | complex:
        if isinstance(other, GridFunction):
            self.grid.require_compatible(other.grid, "grid functions")
            return other.values
        return complex(other)

    def __add__(self, other: GridFunction | complex) -> GridFunction:
        return GridFunction(self.grid, self.values + self._operand(other))

    __radd__ = __add__

    def __sub__(self, other: GridFunction | complex) -> GridFunction:
        return GridFunction(self.grid, self.values - self._operand(other))

    def __mul__(self, other: GridFunction | complex) -> GridFunction:
        return GridFunction(self.grid, self.values * self._operand(other))

    __rmul__ = __mul__

    def __truediv__(self, other: complex) -> GridFunction:
        return GridFunction(self.grid, self.values / complex(other))

    def __neg__(self) -> GridFunction:
        return GridFunction(self.grid, -self.values)

    # Pointwise lookup -------------------------------------------------------

    def sample(
        self,
        points: npt.ArrayLike,
        *,
        method: Literal["nearest", "linear"] = "nearest",
        outside: Literal["raise", "zero"] = "raise",
    ) -> ComplexArray:
        """Evaluate at arbitrary points.

        Args:
            points: (N, dim) array (or flat array in 1D)
            method: Nearest-lattice lookup or multilinear interpolation
            outside: Raise OutOfDomain, or return 0 outside the box

        Returns:
            Complex array of N values
        """
        pts = self.grid.as_points(points)
        inside = self.grid.contains(pts)
        if outside == "raise" and not np.all(inside):
            raise OutOfDomain(_outside_message(pts[~inside][0], self.grid))

        result = np.zeros(len(pts), dtype=np.complex128)
        if not np.any(inside):
            return result
        if method == "nearest":
            result[inside] = self.values[self.grid.locate(pts[inside])]
            return result

        arr = self.as_array()
        axes = tuple(self.grid.axes())
        real = RegularGridInterpolator(axes, arr.real, bounds_error=False, fill_value=0.0)
        imag = RegularGridInterpolator(axes, arr.imag, bounds_error=False, fill_value=0.0)
        result[inside] = real(pts[inside]) + 1j * imag(pts[inside])
        return result


def default_grid(dim: int | None = None) -> Grid:
    """Default feature grid from settings (PDOMMD_GRID__*)."""
    from pdo_mmd.config import get_settings

    d, n, half_width = get_settings().grid.resolve(dim)
    return make_grid(d, n, half_width)
