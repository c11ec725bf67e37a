"""Tests for local moments and moment fields."""

import json
import math

import numpy as np
import pytest

from pdo_mmd.exceptions import GridMismatch, UnsupportedPoint
from pdo_mmd.mmd import SampleSet, local_moment, moment_field, resolve_feature, write_moments
from pdo_mmd.symbols import Constant, GaussHermite, SeparableSymbol, canonicalize
from tests.factories import gaussian_density


class TestLocalMoment:
    """Tests for local_moment."""

    def test_point_mass(self, grid):
        """A single sample at 0.3 has moment g(0.3) wherever it is supported."""
        noise = gaussian_density(grid.dual())
        source = SampleSet([0.3])

        value = local_moment([0.0], source, resolve_feature("coord_1"), noise)
        assert value == pytest.approx(0.3)

    def test_symmetric_pair_cancels(self, grid):
        noise = gaussian_density(grid.dual())
        source = SampleSet([-1.0, 1.0])

        value = local_moment([0.0], source, resolve_feature("coord_1"), noise)
        assert value == pytest.approx(0.0, abs=1e-12)

    def test_feature_is_conjugated(self, grid):
        noise = gaussian_density(grid.dual())

        value = local_moment([0.0], SampleSet([0.0]), Constant(value=2j), noise)
        assert value == pytest.approx(-2j)

    def test_density_source(self, grid):
        """With g = 1 the moment of any density is 1."""
        data_grid = grid.dual()
        noise = gaussian_density(data_grid)
        source = gaussian_density(data_grid, mean=0.5, var=0.5)

        assert local_moment([1.0], source, Constant(value=1.0), noise) == pytest.approx(1.0)

    def test_outside_support(self, grid):
        """Narrow noise far from every sample leaves the moment undefined."""
        noise = gaussian_density(grid.dual(), var=0.1)

        with pytest.raises(UnsupportedPoint):
            local_moment([10.0], SampleSet([0.0]), Constant(value=1.0), noise)

    @pytest.mark.parametrize("target", ["flat", "row"])
    def test_2d_point(self, grid_2d, target):
        """Offsets t - x on lattice nodes reproduce the Gaussian-weighted mean of y_2."""
        data_grid = grid_2d.dual()
        h = data_grid.spacing[0]
        noise = gaussian_density(data_grid)
        source = SampleSet([[0.0, 2 * h], [h, -h], [-h, h]])
        t = [0.0, 2 * h] if target == "flat" else [[0.0, 2 * h]]

        value = local_moment(t, source, resolve_feature("coord_2", dim=2), noise)
        # offsets (0, 0), (-h, 3h), (h, h)
        w = [1.0, math.exp(-5 * h**2), math.exp(-(h**2))]
        expected = (2 * h * w[0] - h * w[1] + h * w[2]) / sum(w)
        assert value == pytest.approx(expected, rel=1e-9)

    def test_rejects_several_points(self, grid):
        noise = gaussian_density(grid.dual())

        with pytest.raises(ValueError, match="one point"):
            local_moment([0.0, 1.0], SampleSet([0.0]), Constant(value=1.0), noise)

    def test_rejects_wrong_dimension(self, grid_2d):
        noise = gaussian_density(grid_2d.dual())

        with pytest.raises(GridMismatch):
            local_moment([[0.0, 1.0, 2.0]], SampleSet([[0.0, 0.0]]), Constant(value=1.0), noise)


class TestMomentField:
    """Tests for moment_field and write_moments."""

    @pytest.fixture
    def result(self, grid):
        """exp(-x^2/2) * y compares point masses at 0 and 0.5."""
        sym = SeparableSymbol.single(GaussHermite(), resolve_feature("coord_1"))
        canon = canonicalize(sym, grid)
        return moment_field(SampleSet([0.0]), SampleSet([0.5]), canon, grid)

    def test_constant_gap(self, result):
        """The gap is conj(c) (0 - 0.5) with c = sqrt(2 pi) wherever defined."""
        assert result.size == 1
        mask = result.masks[0]
        np.testing.assert_allclose(
            result.fields[0][mask], -0.5 * math.sqrt(2 * math.pi), rtol=1e-9
        )
        assert not np.any(result.fields[0][~mask])

    def test_mask_covers_the_center_only(self, result):
        y = result.grid.lattice()[:, 0]

        assert result.masks[0][np.argmin(np.abs(y))]
        assert not result.masks[0][0]
        assert 0.0 < result.defined_fraction(0) < 1.0

    def test_files(self, result, tmp_path):
        document = write_moments(result, tmp_path / "moments")

        csv = (tmp_path / "moments" / "moment_0.csv").read_text().splitlines()
        assert csv[0] == "x1,re,im,defined"
        assert len(csv) == result.grid.size + 1
        saved = json.loads((tmp_path / "moments" / "moments.json").read_text())
        assert saved == document
        assert saved["terms"] == 1
