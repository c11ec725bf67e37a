"""Symbol constructions.

- from_translation_invariant: rank-one symbol sqrt(gamma(x)) * 1 whose kernel
  is the given translation-invariant profile k(s - t)
- from_kernel_profile: the same symbol in closed form for a Laplace, rational
  quadratic or Matern profile
- universality_symbol: grid square root of sum_i f_i(D)^H exp(-|x|^2/4eps^2) f_i(D)
- gaussian_envelope_symbol: p(x, y) exp(-|x|^2/4ex^2 - |y|^2/4ey^2 + rho x.y)
"""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np
import scipy.linalg

from pdo_mmd.config import get_settings
from pdo_mmd.exceptions import InvalidSymbol, NotPositiveDefinite, NotPSD
from pdo_mmd.logging import get_logger
from pdo_mmd.numgrid import (
    Grid,
    GridFunction,
    TransformDirection,
    default_grid,
    fourier,
    fourier_matrix,
    phase_matrix,
)
from pdo_mmd.symbols.separable import DenseSymbol, SeparableSymbol
from pdo_mmd.symbols.profiles import LaplaceProfile, MaternProfile, RationalQuadraticProfile
from pdo_mmd.symbols.terms import Constant, Polynomial, SpectralRoot

logger = get_logger(__name__)


def from_translation_invariant(k: GridFunction, tol_neg: float | None = None) -> SeparableSymbol:
    """Rank-one symbol of a translation-invariant kernel K(s, t) = k(s - t).

    ``k`` is sampled on the data grid (the difference variable). Its scaled
    inverse transform gamma lives on the feature grid and must be a
    nonnegative function; the symbol is sqrt(gamma(x)) * 1.

    Args:
        k: Kernel profile on the data grid
        tol_neg: Relative tolerance for negative or imaginary parts of gamma

    Raises:
        NotPositiveDefinite: If gamma has a negative lobe or imaginary part
    """
    rel = get_settings().tolerances.tol_neg if tol_neg is None else tol_neg
    dim = k.grid.dim
    gamma = fourier(k, TransformDirection.INVERSE) * (2.0 * math.pi) ** (-dim / 2)

    tol = rel * float(np.max(np.abs(gamma.values), initial=0.0))
    min_real = float(gamma.real.min())
    max_imag = float(np.abs(gamma.imag).max())
    if min_real < -tol or max_imag > tol:
        raise NotPositiveDefinite(
            f"Profile transform has min real part {min_real:.3e} and max imaginary part "
            f"{max_imag:.3e} (tolerance {tol:.3e})"
        )
    f = GridFunction(gamma.grid, np.sqrt(np.maximum(gamma.real, 0.0)))
    return SeparableSymbol.single(f, Constant(value=1.0))


def from_kernel_profile(
    profile: LaplaceProfile | RationalQuadraticProfile | MaternProfile,
) -> SeparableSymbol:
    """Analytic symbol sqrt(gamma(x)) * 1 of a radial kernel profile.

    Its closed kernel is the profile itself, with no grid truncation.
    """
    return SeparableSymbol.single(SpectralRoot(profile=profile), Constant(value=1.0))


def _check_leading_terms(polys: Sequence[Polynomial], dim: int) -> int:
    if not polys:
        raise InvalidSymbol("At least one polynomial is required")
    degrees = [p.degree(dim) for p in polys]
    order = max(degrees)
    if order < 0:
        raise InvalidSymbol("All polynomials are zero")
    for i, poly in enumerate(polys):
        if not poly.has_leading_term(dim, order):
            raise InvalidSymbol(
                f"Polynomial {i} has no nonzero coefficient of total degree {order}"
            )
    return order


def universality_symbol(
    eps: float,
    polys: Sequence[Polynomial],
    grid: Grid | None = None,
    psd_tol: float | None = None,
) -> DenseSymbol:
    """Dense symbol of the principal square root of an elliptic grid operator.

    Assembles L = sum_i P_i^H W P_i where P_i = f_i(D) acts through the
    transform pair and W is multiplication by exp(-|x|^2 / 4 eps^2), then
    returns the symbol of S = L^(1/2) read back through the pdo_xD
    discretization.

    Raises:
        InvalidSymbol: If eps <= 0 or a polynomial lacks a top-degree term
        NotPSD: If L has an eigenvalue below -psd_tol * lambda_max
    """
    if not eps > 0:
        raise InvalidSymbol(f"eps must be positive, got {eps}")
    grid_x = grid or default_grid()
    grid_y = grid_x.dual()
    order = _check_leading_terms(polys, grid_x.dim)
    rel = get_settings().tolerances.psd if psd_tol is None else psd_tol

    forward = fourier_matrix(grid_x, TransformDirection.FORWARD)
    inverse = fourier_matrix(grid_y, TransformDirection.INVERSE)
    x = grid_x.lattice()
    weight = np.exp(-np.sum(x**2, axis=1) / (4.0 * eps**2))
    freqs = grid_y.lattice()

    op = np.zeros((grid_x.size, grid_x.size), dtype=np.complex128)
    for poly in polys:
        p = inverse @ (poly.evaluate(freqs)[:, None] * forward)
        op += p.conj().T @ (weight[:, None] * p)
    op = 0.5 * (op + op.conj().T)

    eigvals, eigvecs = scipy.linalg.eigh(op)
    top = float(eigvals[-1])
    if eigvals[0] < -rel * max(top, 0.0):
        raise NotPSD(
            f"Discretized operator has eigenvalue {eigvals[0]:.3e} "
            f"(largest {top:.3e}); refine the grid"
        )
    root = (eigvecs * np.sqrt(np.clip(eigvals, 0.0, None))) @ eigvecs.conj().T
    root = 0.5 * (root + root.conj().T)

    c = (2.0 * math.pi) ** (-grid_x.dim / 2) * grid_y.cell_volume
    values = (root @ inverse) / c * np.conj(phase_matrix(grid_x, grid_y))
    logger.debug(
        "Universality symbol: {} polynomials of order {}, eigenvalues in [{:.3e}, {:.3e}]",
        len(polys),
        order,
        float(eigvals[0]),
        top,
    )
    return DenseSymbol(grid_x, grid_y, values)


def gaussian_envelope_symbol(
    eps_x: float,
    eps_y: float,
    coupling: float = 0.0,
    poly: Polynomial | None = None,
    grid: Grid | None = None,
) -> DenseSymbol:
    """Dense symbol p(x, y) exp(-|x|^2/4eps_x^2 - |y|^2/4eps_y^2 + coupling x.y).

    ``poly`` is a polynomial in 2*dim variables, x coordinates first.

    Raises:
        InvalidSymbol: If widths are not positive or the envelope is not integrable
    """
    if not (eps_x > 0 and eps_y > 0):
        raise InvalidSymbol(f"widths must be positive, got {eps_x}, {eps_y}")
    if coupling**2 >= 1.0 / (4.0 * eps_x**2 * eps_y**2):
        raise InvalidSymbol(
            f"coupling {coupling} too strong for widths {eps_x}, {eps_y}: envelope not integrable"
        )
    grid_x = grid or default_grid()
    grid_y = grid_x.dual()
    x, y = grid_x.lattice(), grid_y.lattice()
    dim = grid_x.dim

    exponent = (
        -np.sum(x**2, axis=1)[:, None] / (4.0 * eps_x**2)
        - np.sum(y**2, axis=1)[None, :] / (4.0 * eps_y**2)
        + coupling * (x @ y.T)
    )
    envelope = np.exp(exponent).astype(np.complex128)
    if poly is None:
        return DenseSymbol(grid_x, grid_y, envelope)

    factor = np.zeros_like(envelope)
    for key, coef in poly.table(2 * dim).items():
        alpha = np.asarray(key[:dim], dtype=np.float64)
        beta = np.asarray(key[dim:], dtype=np.float64)
        factor += coef * np.outer(np.prod(x**alpha, axis=1), np.prod(y**beta, axis=1))
    return DenseSymbol(grid_x, grid_y, factor * envelope)
