"""Tests for closed and grid kernels."""

import math

import numpy as np
import pytest

from pdo_mmd.exceptions import OutOfDomain, TransformUnavailable
from pdo_mmd.kernels import GridTransform, kernel_closed, kernel_grid, pair_transform
from pdo_mmd.numgrid import GridFunction, make_grid
from pdo_mmd.symbols import (
    Constant,
    GaussHermite,
    Indicator,
    LaplaceProfile,
    MaternProfile,
    RationalQuadraticProfile,
    SeparableSymbol,
    SeparableTerm,
    from_kernel_profile,
    scale,
)
from tests.factories import make_test_grid


def _profile(z):
    return math.sqrt(math.pi) * np.exp(-0.25 * np.asarray(z) ** 2)


class TestKernelClosed:
    """Tests for the pair-transform form."""

    def test_unit_gaussian_symbol(self, grid, gaussian_symbol):
        """exp(-x^2/2) * 1 has kernel sqrt(pi) exp(-(s - t)^2/4)."""
        kernel = kernel_closed(gaussian_symbol, grid)
        values = kernel.evaluate_pairs([0.0, 0.0, 2.0], [0.0, 1.0, -1.0])

        np.testing.assert_allclose(values, _profile([0.0, 1.0, 3.0]), rtol=1e-12)

    def test_matrix_matches_pairs(self, grid):
        """matrix(a, b)[p, q] = K(a_p, b_q)."""
        sym = SeparableSymbol.single(GaussHermite(degree=1), GaussHermite(width=2.0), 1 - 1j)
        kernel = kernel_closed(sym, grid)
        a, b = np.array([-1.0, 0.5, 2.0]), np.array([0.0, 3.0])

        matrix = kernel.matrix(a, b)
        assert matrix[2, 1] == pytest.approx(kernel.evaluate_pairs([2.0], [3.0])[0])
        assert matrix.shape == (3, 2)

    def test_kernel_is_hermitian(self, grid):
        """K(t, s) = conj(K(s, t))."""
        sym = SeparableSymbol(
            (
                SeparableTerm(GaussHermite(), GaussHermite(center=0.5), 2.0),
                SeparableTerm(GaussHermite(degree=1), Constant(value=1j)),
            )
        )
        kernel = kernel_closed(sym, grid)
        s, t = np.array([0.3, -1.0]), np.array([1.1, 0.4])

        forward, backward = kernel.evaluate_pairs(s, t), kernel.evaluate_pairs(t, s)
        np.testing.assert_allclose(backward, np.conj(forward))

    def test_zero_coefficients_skipped(self, grid, gaussian_symbol):
        kernel = kernel_closed(scale(gaussian_symbol, 0.0), grid)

        assert kernel.terms == ()
        assert not np.any(kernel.matrix([0.0, 1.0], [0.0]))

    def test_constant_feature_factor(self, grid):
        """1 * 1 has a delta transform."""
        sym = SeparableSymbol.single(Constant(value=1.0), Constant(value=1.0))

        with pytest.raises(TransformUnavailable):
            kernel_closed(sym, grid)

    def test_grid_factor_uses_fft_table(self, grid):
        """A sampled Gaussian factor reproduces the closed-form profile."""
        f = GridFunction.from_callable(grid, lambda x: np.exp(-0.5 * x[:, 0] ** 2))
        kernel = kernel_closed(SeparableSymbol.single(f, Constant(value=1.0)), grid)
        z = np.array([0.0, 1.3, -2.7])

        np.testing.assert_allclose(kernel.evaluate_pairs(np.zeros(3), z), _profile(z), atol=1e-6)


class TestKernelProfiles:
    """Closed kernels of the translation-invariant profile symbols."""

    PROFILES = [
        LaplaceProfile(length=0.8),
        RationalQuadraticProfile(length=1.1, alpha=1.5),
        MaternProfile(length=0.9, nu=1.5),
    ]

    @pytest.mark.parametrize("dim", [1, 2])
    @pytest.mark.parametrize("profile", PROFILES, ids=lambda p: p.kind)
    def test_round_trip(self, profile, dim):
        """The kernel of sqrt(gamma) * 1 is the profile k(s - t)."""
        grid = make_test_grid(dim)
        rng = np.random.default_rng(dim)
        s, t = rng.uniform(-3.0, 3.0, (2, 20, dim))

        kernel = kernel_closed(from_kernel_profile(profile), grid)
        expected = profile.kernel(np.linalg.norm(s - t, axis=1))
        np.testing.assert_allclose(kernel.evaluate_pairs(s, t), expected, rtol=1e-12)

    @pytest.mark.parametrize("profile", PROFILES, ids=lambda p: p.kind)
    def test_random_gram_is_psd(self, grid, profile):
        points = np.random.default_rng(4).uniform(-4.0, 4.0, 100)
        gram = kernel_closed(from_kernel_profile(profile), grid).matrix(points, points)

        eigenvalues = np.linalg.eigvalsh(gram)
        assert eigenvalues.min() >= -1e-8 * eigenvalues.max()


class TestPairTransforms:
    """Tests for pair_transform."""

    def test_indicator_pair(self, grid):
        """T(0) of 1_[-1,1) with itself is the box length."""
        box = Indicator(lo=-1.0, hi=1.0)

        assert pair_transform(box, box, grid)([0.0])[0] == pytest.approx(2.0)

    def test_disjoint_indicators(self, grid):
        transform = pair_transform(Indicator(lo=0.0, hi=1.0), Indicator(lo=2.0, hi=3.0), grid)

        assert not np.any(transform([0.0, 1.0]))

    def test_undecayed_table_raises_outside(self):
        """A table that has not decayed at its edge cannot be extended by zero."""
        grid = make_grid(1, 16, 2.0)
        noise = np.random.default_rng(0).normal(size=grid.size)
        table = GridTransform.from_product(GridFunction(grid, noise), pad=1)

        assert not table.edge_negligible
        with pytest.raises(OutOfDomain):
            table([1e3])


class TestKernelGrid:
    """Tests for the grid kernel."""

    def test_matches_closed_kernel_near_center(self, grid, gaussian_symbol):
        """Away from the periodic wrap the grid kernel equals the closed form."""
        grid_kernel = kernel_grid(gaussian_symbol, grid)
        y = grid.dual().lattice()[:, 0]
        central = np.abs(y) <= 6.0

        expected = _profile(y[central][:, None] - y[central][None, :])
        np.testing.assert_allclose(
            grid_kernel.entries[np.ix_(central, central)], expected, atol=1e-10
        )

    def test_matern_symbol_near_center(self, grid):
        """The grid discretization of a spectral root reproduces its profile."""
        profile = MaternProfile(length=1.0, nu=2.5)
        grid_kernel = kernel_grid(from_kernel_profile(profile), grid)
        y = grid.dual().lattice()[:, 0]
        central = np.abs(y) <= 6.0

        expected = profile.kernel(y[central][:, None] - y[central][None, :])
        np.testing.assert_allclose(
            grid_kernel.entries[np.ix_(central, central)], expected, atol=1e-4
        )

    def test_nearest_lattice_lookup(self, grid, gaussian_symbol):
        """Off-lattice points snap to the nearest lattice point."""
        grid_kernel = kernel_grid(gaussian_symbol, grid)
        y = grid.dual().lattice()[:, 0]

        value = grid_kernel.evaluate_pairs([y[64] + 0.01], [y[66] - 0.01])[0]
        assert value == grid_kernel.entries[64, 66]
