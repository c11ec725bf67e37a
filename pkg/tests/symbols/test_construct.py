"""Tests for symbol constructions."""

import math

import numpy as np
import pytest

from pdo_mmd.exceptions import InvalidSymbol, NotPositiveDefinite
from pdo_mmd.numgrid import GridFunction, make_grid
from pdo_mmd.symbols import (
    DenseSymbol,
    Indicator,
    LaplaceProfile,
    MaternProfile,
    Polynomial,
    RationalQuadraticProfile,
    SpectralRoot,
    from_kernel_profile,
    from_translation_invariant,
    gaussian_envelope_symbol,
    universality_symbol,
)


class TestTranslationInvariant:
    """Tests for from_translation_invariant."""

    def test_gaussian_profile(self, grid):
        """sqrt(pi) exp(-z^2/4) comes from the feature factor exp(-x^2/2)."""
        data_grid = grid.dual()
        profile = GridFunction.from_callable(
            data_grid, lambda z: math.sqrt(math.pi) * np.exp(-0.25 * z[:, 0] ** 2)
        )

        sym = from_translation_invariant(profile)
        assert sym.rank == 1
        f = sym.terms[0].f
        assert isinstance(f, GridFunction)
        assert f.grid == grid
        x = grid.lattice()[:, 0]
        np.testing.assert_allclose(f.values.real, np.exp(-0.5 * x**2), atol=1e-8)

    def test_box_profile_rejected(self, grid):
        """The indicator of [-1, 1) has a sign-changing transform."""
        data_grid = grid.dual()
        profile = GridFunction(
            data_grid, Indicator(lo=-1.0, hi=1.0).evaluate(data_grid.lattice())
        )

        with pytest.raises(NotPositiveDefinite):
            from_translation_invariant(profile)


    @pytest.mark.parametrize(
        "profile",
        [MaternProfile(length=1.0, nu=2.5), RationalQuadraticProfile(length=0.5, alpha=20.0)],
        ids=lambda p: p.kind,
    )
    def test_sampled_profile_matches_closed_root(self, grid, profile):
        """Sampling k on the data grid recovers the closed spectral density."""
        z = grid.dual().lattice()[:, 0]
        sym = from_translation_invariant(GridFunction(grid.dual(), profile.kernel(z)))

        sampled = sym.terms[0].f.values.real ** 2
        closed = SpectralRoot(profile=profile).evaluate(grid.lattice()) ** 2
        np.testing.assert_allclose(sampled, closed, atol=1e-4 * closed.max())

    def test_closed_route_is_analytic(self):
        sym = from_kernel_profile(LaplaceProfile(length=2.0))

        assert sym.rank == 1
        assert sym.terms[0].f == SpectralRoot(profile=LaplaceProfile(length=2.0))


class TestUniversality:
    """Tests for universality_symbol."""

    def test_multiplication_operator(self):
        """With the constant polynomial, S is multiplication by exp(-|x|^2/8eps^2)."""
        grid = make_grid(1, 32, 8.0)
        sym = universality_symbol(1.0, [Polynomial.from_coefficients([1.0])], grid)

        assert isinstance(sym, DenseSymbol)
        x = grid.lattice()[:, 0]
        expected = np.broadcast_to(np.exp(-(x**2) / 8.0)[:, None], sym.values.shape)
        np.testing.assert_allclose(sym.values, expected, atol=1e-8)

    def test_eps_must_be_positive(self, grid):
        """eps <= 0 is invalid."""
        with pytest.raises(InvalidSymbol, match="eps"):
            universality_symbol(0.0, [Polynomial.from_coefficients([1.0])], grid)

    def test_leading_term_required(self, grid):
        """Every polynomial needs a term of the top total degree."""
        polys = [
            Polynomial.from_coefficients([0.0, 0.0, 1.0]),
            Polynomial.from_coefficients([0.0, 1.0]),
        ]

        with pytest.raises(InvalidSymbol, match="Polynomial 1"):
            universality_symbol(1.0, polys, grid)


class TestGaussianEnvelope:
    """Tests for gaussian_envelope_symbol."""

    def test_uncoupled_envelope(self):
        """Without coupling the entries factor into two Gaussians."""
        grid = make_grid(1, 16, 6.0)
        sym = gaussian_envelope_symbol(1.0, 2.0, grid=grid)
        x, y = grid.lattice()[:, 0], grid.dual().lattice()[:, 0]

        expected = np.outer(np.exp(-(x**2) / 4.0), np.exp(-(y**2) / 16.0))
        np.testing.assert_allclose(sym.values, expected, rtol=1e-12)

    def test_polynomial_prefactor(self):
        """p(x, y) = x * y multiplies the envelope."""
        grid = make_grid(1, 16, 6.0)
        poly = Polynomial.model_validate({"terms": [{"power": [1, 1], "coef": 1.0}]})
        plain = gaussian_envelope_symbol(1.0, 1.0, grid=grid)
        sym = gaussian_envelope_symbol(1.0, 1.0, poly=poly, grid=grid)
        x, y = grid.lattice()[:, 0], grid.dual().lattice()[:, 0]

        np.testing.assert_allclose(sym.values, np.outer(x, y) * plain.values, rtol=1e-12)

    def test_coupling_must_keep_envelope_integrable(self, grid):
        """rho^2 >= 1/(4 eps_x^2 eps_y^2) is rejected."""
        with pytest.raises(InvalidSymbol, match="coupling"):
            gaussian_envelope_symbol(1.0, 1.0, coupling=0.5, grid=grid)

    def test_widths_must_be_positive(self, grid):
        with pytest.raises(InvalidSymbol):
            gaussian_envelope_symbol(-1.0, 1.0, grid=grid)
