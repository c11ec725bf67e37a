"""Canonical form of separable symbols.

Every term c f(x) g(y) is rewritten so that each feature-side factor h has a
Fourier transform that is a probability density p on the data grid:

1. Split f = h1 + i h2 with h1 = (f + f~)/2, h2 = (f - f~)/2i and
   f~(x) = conj(f(-x)). Both parts have real transforms.
2. Split each real transform into its positive and negative parts and
   normalize them to unit mass, absorbing the masses into the coefficient.

A symbol with l terms produces at most 4l canonical terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from pdo_mmd.config import get_settings
from pdo_mmd.exceptions import DegenerateTerm
from pdo_mmd.logging import get_logger
from pdo_mmd.numgrid import Grid, GridFunction, TransformDirection, default_grid, fourier
from pdo_mmd.symbols.separable import (
    Factor,
    SeparableSymbol,
    SeparableTerm,
    factor_on_grid,
)
from pdo_mmd.symbols.terms import Constant

logger = get_logger(__name__)

# Terms whose transform has less total variation than this are degenerate
_MIN_VARIATION = 1e-14


@dataclass(frozen=True)
class CanonicalSymbol:
    """Separable symbol whose feature factors have pdf transforms."""

    symbol: SeparableSymbol
    """Terms c_i h_i(x) g_i(y) with h_i = inverse transform of p_i."""

    pdfs: tuple[GridFunction, ...] = field(default=())
    """Densities p_i on the data grid, one per term."""

    masses: tuple[float, ...] = field(default=())
    """L1 mass of the transform lobe each term was normalized by."""

    source_rank: int = 0
    """Number of terms of the symbol that was canonicalized."""

    @property
    def size(self) -> int:
        """Number of canonical terms L."""
        return len(self.pdfs)

    @property
    def is_zero(self) -> bool:
        return self.size == 0


def _check_factor(factor: Factor) -> None:
    if isinstance(factor, Constant) and factor.value != 0:
        raise DegenerateTerm("Constant feature factor has a delta Fourier transform")


def _lobes(
    h: GridFunction, coef: complex, g: Factor, drop: float
) -> list[tuple[SeparableTerm, GridFunction, float]]:
    spectrum = fourier(h, TransformDirection.FORWARD)
    real = spectrum.real
    volume = spectrum.grid.cell_volume
    out: list[tuple[SeparableTerm, GridFunction, float]] = []
    for sign, lobe in ((1.0, np.maximum(real, 0.0)), (-1.0, np.maximum(-real, 0.0))):
        mass = float(lobe.sum() * volume)
        if mass < drop:
            continue
        pdf = GridFunction(spectrum.grid, lobe / mass)
        feature = fourier(pdf, TransformDirection.INVERSE)
        out.append((SeparableTerm(feature, g, sign * mass * coef), pdf, mass))
    return out


def canonicalize(
    sym: SeparableSymbol,
    grid: Grid | None = None,
    mass_drop: float | None = None,
) -> CanonicalSymbol:
    """Rewrite a separable symbol as a sum of pdf-transform terms.

    Args:
        sym: Separable symbol; feature factors are sampled on ``grid``
        grid: Feature grid (defaults to the settings grid of the factor dimension)
        mass_drop: Terms whose lobe mass falls below this (relative to the
            term's total transform mass, floor 1) are dropped

    Returns:
        CanonicalSymbol with at most 4 * sym.rank terms

    Raises:
        DegenerateTerm: If a feature factor is a nonzero constant or its
            transform has no variation although the factor is nonzero
        GridMismatch: If a grid-function factor lives on another grid
    """
    drop = get_settings().tolerances.pdf_mass_drop if mass_drop is None else mass_drop
    feature_grid = grid or _grid_of(sym)

    terms: list[SeparableTerm] = []
    pdfs: list[GridFunction] = []
    masses: list[float] = []
    for index, term in enumerate(sym.terms):
        _check_factor(term.f)
        if term.coef == 0:
            continue
        f = factor_on_grid(term.f, feature_grid)
        mirrored = f.reflected().conj()
        even = (f + mirrored) * 0.5
        odd = (f - mirrored) * (-0.5j)

        total = float(np.abs(fourier(f, TransformDirection.FORWARD).values).sum())
        total *= feature_grid.dual().cell_volume
        if total < _MIN_VARIATION:
            if np.any(f.values):
                raise DegenerateTerm(f"Term {index} has a vanishing transform")
            continue

        threshold = drop * max(1.0, total)
        for part, coef in ((even, term.coef), (odd, 1j * term.coef)):
            for canonical_term, pdf, mass in _lobes(part, coef, term.g, threshold):
                terms.append(canonical_term)
                pdfs.append(pdf)
                masses.append(mass)

    logger.debug("Canonicalized {} terms into {}", sym.rank, len(terms))
    return CanonicalSymbol(
        symbol=SeparableSymbol(tuple(terms)),
        pdfs=tuple(pdfs),
        masses=tuple(masses),
        source_rank=sym.rank,
    )


def _grid_of(sym: SeparableSymbol) -> Grid:
    for term in sym.terms:
        if isinstance(term.f, GridFunction):
            return term.f.grid
    return default_grid()
