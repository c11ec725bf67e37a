"""Tests for canonicalization into pdf-transform terms."""

import numpy as np
import pytest

from pdo_mmd.exceptions import DegenerateTerm
from pdo_mmd.numgrid import NormKind, integrate, norm
from pdo_mmd.symbols import (
    Constant,
    GaussHermite,
    SeparableSymbol,
    canonicalize,
    densify,
)
from tests.factories import make_separable_symbol


class TestCanonicalize:
    """Tests for canonicalize."""

    def test_gaussian_is_one_term(self, grid, gaussian_symbol):
        """A centered Gaussian already has a pdf transform: one term."""
        canon = canonicalize(gaussian_symbol, grid)

        assert canon.size == 1
        assert canon.source_rank == 1
        # ||F[exp(-x^2/2)]||_1 = sqrt(2 pi)
        assert canon.masses[0] == pytest.approx(np.sqrt(2 * np.pi), rel=1e-9)

    def test_hermite_two_is_one_negative_term(self, grid):
        """He_2 has a transform -y^2 exp(-y^2/2): a single negative lobe."""
        sym = SeparableSymbol.single(GaussHermite(degree=2), Constant(value=1.0))
        canon = canonicalize(sym, grid)

        assert canon.size == 1
        assert canon.symbol.terms[0].coef.real < 0

    @pytest.mark.parametrize("seed", range(5))
    def test_invariants(self, grid, seed):
        """At most 4l terms, every pdf nonnegative with unit mass, exact reconstruction."""
        sym = make_separable_symbol(rank=3, seed=seed, feature_g=True)
        canon = canonicalize(sym, grid)

        assert canon.size <= 4 * sym.rank
        for pdf in canon.pdfs:
            assert pdf.real.min() >= -1e-9
            assert integrate(pdf).real == pytest.approx(1.0, abs=1e-6)

        original = densify(sym, grid, grid.dual()).values
        rebuilt = densify(canon.symbol, grid, grid.dual()).values
        scale = np.abs(original).max()
        assert np.abs(rebuilt - original).max() <= 1e-8 * scale

    def test_constant_feature_factor(self, grid):
        """A nonzero constant f has a delta transform."""
        sym = SeparableSymbol.single(Constant(value=1.0), GaussHermite())

        with pytest.raises(DegenerateTerm):
            canonicalize(sym, grid)

    def test_zero_terms_dropped(self, grid):
        """Zero coefficients and zero factors contribute nothing."""
        sym = SeparableSymbol.single(GaussHermite(scale=0.0), Constant(value=1.0))

        canon = canonicalize(sym, grid)
        assert canon.is_zero

    def test_pdfs_live_on_the_data_grid(self, grid, gaussian_symbol):
        """Densities are on the dual grid and their inverse transforms on the feature grid."""
        canon = canonicalize(gaussian_symbol, grid)

        assert canon.pdfs[0].grid == grid.dual()
        assert norm(canon.pdfs[0], NormKind.L1) == pytest.approx(1.0)
