"""Pair transforms T_ij(z) = integral conj(f_i(x)) f_j(x) exp(i x.z) dx.

Products of Gaussian-type factors or of indicators have closed forms, as does
a spectral root times itself. Everything else goes through a zero-padded FFT
table on the feature grid, interpolated with cubic splines. Table nodes
include every difference of data-grid lattice points inside the table box,
where the interpolation is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol

import numpy as np
import numpy.typing as npt
from scipy.interpolate import CubicSpline, RectBivariateSpline

from pdo_mmd.exceptions import OutOfDomain, TransformUnavailable
from pdo_mmd.numgrid import ComplexArray, FloatArray, Grid, GridFunction, fourier, make_grid
from pdo_mmd.symbols import (
    Constant,
    ExpPoly,
    Factor,
    Indicator,
    SpectralRoot,
    exp_poly_of,
    factor_on_grid,
)
from pdo_mmd.symbols.terms import as_point_array

# Zero-padding factor of the grid path
DEFAULT_PAD = 8

# Table magnitude at the box edge below which T is taken as 0 outside the table
_EDGE_RTOL = 1e-12


class PairTransform(Protocol):
    def __call__(self, z: npt.ArrayLike) -> ComplexArray: ...


@dataclass(frozen=True)
class ZeroTransform:
    """Transform of a product that vanishes identically."""

    def __call__(self, z: npt.ArrayLike) -> ComplexArray:
        return np.zeros(len(as_point_array(z)), dtype=np.complex128)


@dataclass(frozen=True)
class ClosedTransform:
    """T(z) = (2pi)^(d/2) F[product](-z) for a closed-form product."""

    product: ExpPoly | Indicator
    dim: int

    def __call__(self, z: npt.ArrayLike) -> ComplexArray:
        pts = as_point_array(z)
        scale = (2.0 * math.pi) ** (self.dim / 2)
        return np.asarray(scale * self.product.transform(-pts), dtype=np.complex128)


@dataclass(frozen=True)
class ProfileTransform:
    """T(z) = k(z) for a spectral-root factor paired with itself."""

    root: SpectralRoot

    def __call__(self, z: npt.ArrayLike) -> ComplexArray:
        return self.root.kernel(z)


class GridTransform:
    """Spline-interpolated FFT table of T on a refined difference lattice.

    Outside the table box T is reported as 0 when the table has decayed at
    its edges, and OutOfDomain is raised otherwise.
    """

    def __init__(self, table: GridFunction) -> None:
        self.table = table
        magnitude = np.abs(table.as_array())
        edges = max(float(np.take(magnitude, 0, axis=a).max()) for a in range(table.grid.dim))
        self.edge_negligible = edges <= _EDGE_RTOL * float(magnitude.max(initial=0.0))

        axes = table.grid.axes()
        values = table.as_array()
        self._spline: CubicSpline | None = None
        self._re: RectBivariateSpline | None = None
        self._im: RectBivariateSpline | None = None
        if table.grid.dim == 1:
            self._spline = CubicSpline(axes[0], values)
        else:
            self._re = RectBivariateSpline(axes[0], axes[1], values.real, kx=3, ky=3)
            self._im = RectBivariateSpline(axes[0], axes[1], values.imag, kx=3, ky=3)

    @classmethod
    def from_product(cls, product: GridFunction, pad: int = DEFAULT_PAD) -> GridTransform:
        """Table of T for samples of conj(f_i) f_j on the feature grid."""
        grid = product.grid
        n = grid.points_per_axis
        padded = make_grid(grid.dim, pad * n, tuple(pad * a for a in grid.half_width))
        offset = (pad - 1) * n // 2
        cube = np.zeros(padded.shape, dtype=np.complex128)
        cube[tuple(slice(offset, offset + n) for _ in range(grid.dim))] = product.as_array()

        # integral p(x) exp(i x.z) dx = (2pi)^(d/2) conj(F[conj p](z))
        spectrum = fourier(GridFunction(padded, np.conj(cube).reshape(-1)), "forward")
        scale = (2.0 * math.pi) ** (grid.dim / 2)
        return cls(GridFunction(spectrum.grid, scale * np.conj(spectrum.values)))

    def _interpolate(self, pts: FloatArray) -> ComplexArray:
        if self._spline is not None:
            return np.asarray(self._spline(pts[:, 0]), dtype=np.complex128)
        assert self._re is not None and self._im is not None
        re = self._re.ev(pts[:, 0], pts[:, 1])
        im = self._im.ev(pts[:, 0], pts[:, 1])
        return np.asarray(re + 1j * im, dtype=np.complex128)

    def __call__(self, z: npt.ArrayLike) -> ComplexArray:
        pts = as_point_array(z)
        half_width = np.asarray(self.table.grid.half_width)
        inside = np.all(np.abs(pts) <= half_width, axis=1)
        if not np.all(inside) and not self.edge_negligible:
            bad = pts[~inside][0].tolist()
            raise OutOfDomain(f"Difference {bad} outside the transform table {tuple(half_width)}")
        out = np.zeros(len(pts), dtype=np.complex128)
        if np.any(inside):
            out[inside] = self._interpolate(pts[inside])
        return out


def _conj_indicator(box: Indicator) -> Indicator:
    return Indicator(lo=box.lo, hi=box.hi, scale=box.scale.conjugate())


def pair_transform(
    fi: Factor,
    fj: Factor,
    grid: Grid,
    pad: int = DEFAULT_PAD,
) -> PairTransform:
    """T_ij for two feature factors.

    Args:
        fi: Factor entering conjugated
        fj: Factor entering as is
        grid: Feature grid used by the grid path
        pad: Zero-padding factor of the grid path

    Raises:
        TransformUnavailable: If the product has no function transform
            (a bare polynomial, e.g. constant times constant)
    """
    dim = grid.dim
    if any(isinstance(f, Constant) and f.value == 0 for f in (fi, fj)):
        return ZeroTransform()

    if not isinstance(fi, GridFunction) and not isinstance(fj, GridFunction):
        if isinstance(fi, SpectralRoot) and fi == fj:
            return ProfileTransform(fi)
        if isinstance(fi, Indicator) and isinstance(fj, Indicator):
            box = _conj_indicator(fi).intersect(fj, dim)
            return ZeroTransform() if box is None else ClosedTransform(box, dim)
        if isinstance(fi, Indicator) and isinstance(fj, Constant):
            conj_box = _conj_indicator(fi)
            scaled = Indicator(lo=fi.lo, hi=fi.hi, scale=conj_box.scale * fj.value)
            return ClosedTransform(scaled, dim)
        if isinstance(fi, Constant) and isinstance(fj, Indicator):
            scaled = Indicator(lo=fj.lo, hi=fj.hi, scale=fi.value.conjugate() * fj.scale)
            return ClosedTransform(scaled, dim)
        ep_i, ep_j = exp_poly_of(fi, dim), exp_poly_of(fj, dim)
        if ep_i is not None and ep_j is not None:
            product = ep_i.conj().times(ep_j)
            if product.width is None:
                raise TransformUnavailable("Product of feature factors is a bare polynomial")
            return ClosedTransform(product, dim)

    samples = factor_on_grid(fi, grid).conj() * factor_on_grid(fj, grid)
    return GridTransform.from_product(samples, pad)
