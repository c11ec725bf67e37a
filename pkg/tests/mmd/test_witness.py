"""Tests for the MMD witness."""

import numpy as np
import pytest

from pdo_mmd.exceptions import DegenerateWitness
from pdo_mmd.mmd import mmd_spectral, witness
from pdo_mmd.numgrid import GridFunction, NormKind, norm
from tests.factories import make_samples, make_separable_symbol


@pytest.fixture
def samples():
    return make_samples(80, seed=11), make_samples(90, mean=0.8, seed=12)


class TestWitness:
    """Tests for witness and the critic."""

    def test_objective_is_spectral_mmd(self, grid, gaussian_symbol, samples):
        su, sv = samples
        result = witness(su, sv, gaussian_symbol, grid)

        assert result.objective == pytest.approx(mmd_spectral(su, sv, gaussian_symbol, grid).value)
        assert norm(result.function, NormKind.L2) == pytest.approx(1.0)
        assert result.objective_of(result.function) == pytest.approx(result.objective)

    @pytest.mark.parametrize("seed", range(5))
    def test_no_unit_competitor_beats_witness(self, grid, gaussian_symbol, samples, seed):
        su, sv = samples
        result = witness(su, sv, gaussian_symbol, grid)
        rng = np.random.default_rng(seed)
        h = GridFunction(grid, rng.normal(size=grid.size) + 1j * rng.normal(size=grid.size))
        h = h / norm(h, NormKind.L2)

        assert result.objective_of(h) <= result.objective + 1e-12

    def test_critic_mean_gap_is_mmd(self, grid, samples):
        """E_u c - E_v c reproduces the objective."""
        su, sv = samples
        sym = make_separable_symbol(rank=2, seed=3, feature_g=True)
        result = witness(su, sv, sym, grid)

        gap = result.critic(su.points).mean() - result.critic(sv.points).mean()
        assert gap.real == pytest.approx(result.objective, rel=1e-9)
        assert gap.imag == pytest.approx(0.0, abs=1e-9 * result.objective)

    def test_identical_samples_are_degenerate(self, grid, gaussian_symbol):
        samples = make_samples(30)

        with pytest.raises(DegenerateWitness):
            witness(samples, samples, gaussian_symbol, grid)
