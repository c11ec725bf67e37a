"""Tests for seeded harness instances."""

import numpy as np
import pytest

from pdo_mmd.exceptions import SpecError
from pdo_mmd.harness import InstanceSpec, Mixture, generate_instance
from pdo_mmd.mmd import check_density
from pdo_mmd.numgrid import GridFunction
from pdo_mmd.schemas import SymbolFamily
from pdo_mmd.symbols import (
    DenseSymbol,
    LaplaceProfile,
    MaternProfile,
    RationalQuadraticProfile,
    SeparableSymbol,
    SpectralRoot,
)
from tests.factories import make_instance_spec


class TestGenerateInstance:
    """Tests for generate_instance."""

    def test_reproducible(self):
        """The same seed regenerates the same symbols and densities."""
        spec = make_instance_spec()
        first, second = generate_instance(7, spec), generate_instance(7, spec)

        assert first.symbols == second.symbols
        np.testing.assert_array_equal(first.u.values, second.u.values)
        assert first.mixtures == second.mixtures

    def test_seeds_differ(self):
        spec = make_instance_spec()

        assert generate_instance(1, spec).mixtures != generate_instance(2, spec).mixtures

    def test_densities_on_data_grid(self):
        inst = generate_instance(3, make_instance_spec())

        assert inst.u.grid == inst.grid.dual()
        check_density(inst.u, "u")
        check_density(inst.v, "v")

    def test_rank_range(self):
        spec = make_instance_spec(rank_min=2, rank_max=2)
        inst = generate_instance(4, spec)

        assert all(isinstance(s, SeparableSymbol) and s.rank == 2 for s in inst.symbols)

    def test_envelope_family_is_dense(self):
        spec = make_instance_spec(family=SymbolFamily.DENSE_GAUSSIAN_ENVELOPE)
        inst = generate_instance(5, spec)

        assert all(isinstance(s, DenseSymbol) for s in inst.symbols)

    def test_translation_invariant_family(self):
        spec = make_instance_spec(family="translation_invariant")
        sym = generate_instance(6, spec).symbols[0]

        assert isinstance(sym, SeparableSymbol)
        assert isinstance(sym.terms[0].f, GridFunction)

    @pytest.mark.parametrize(
        ("profile", "kind"),
        [
            ("laplace", LaplaceProfile),
            ("rational_quadratic", RationalQuadraticProfile),
            ("matern", MaternProfile),
        ],
    )
    def test_closed_kernel_profiles(self, profile, kind):
        spec = make_instance_spec(family="translation_invariant", profile=profile)
        f = generate_instance(6, spec).symbols[0].terms[0].f

        assert isinstance(f, SpectralRoot)
        assert isinstance(f.profile, kind)

    def test_mixture_document(self):
        mixture = generate_instance(8, make_instance_spec(components=3)).mixtures[0]
        doc = mixture.to_dict()

        assert len(doc["weights"]) == 3
        assert sum(doc["weights"]) == pytest.approx(1.0)
        assert all(var >= 0.05 for var in doc["variances"])

    def test_mixture_sample(self):
        """Draws are seeded and their mean follows the mixture mean."""
        mixture = Mixture(
            weights=(0.3, 0.7), means=((0.0, 0.0), (1.0, -1.0)), variances=(0.5, 0.25)
        )

        samples = mixture.sample(4000, seed=5)
        assert samples.dim == 2
        assert samples.seed == 5
        np.testing.assert_array_equal(samples.points, mixture.sample(4000, seed=5).points)
        expected = np.asarray(mixture.weights) @ np.asarray(mixture.means)
        np.testing.assert_allclose(samples.points.mean(axis=0), expected, atol=0.1)


class TestInstanceSpec:
    """Tests for spec validation."""

    def test_rank_order(self):
        with pytest.raises(SpecError, match="rank_min"):
            InstanceSpec.parse({"rank_min": 3, "rank_max": 2})

    def test_unknown_key(self):
        with pytest.raises(SpecError):
            InstanceSpec.parse({"ranks": 2})

    def test_bad_grid_is_spec_error(self):
        """A grid size that is not a power of two fails when the grid is built."""
        with pytest.raises(SpecError):
            generate_instance(0, make_instance_spec(grid_n=48))

    def test_settings_grid_by_default(self):
        spec = InstanceSpec(dim=2)

        assert spec.feature_grid().points_per_axis == 64
