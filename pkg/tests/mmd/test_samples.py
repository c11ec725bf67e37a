"""Tests for sample sets and sample files."""

import numpy as np
import pytest

from pdo_mmd.mmd import SampleSet, read_samples, write_samples


class TestSampleSet:
    """Tests for SampleSet."""

    def test_flat_input_is_one_dimensional(self):
        samples = SampleSet([1.0, -2.0, 0.5])

        assert samples.dim == 1
        assert samples.size == 3
        assert samples.radius == 2.0

    def test_seeded_draws_reproduce(self):
        a = SampleSet.normal(20, mean=1.0, seed=7)
        b = SampleSet.normal(20, mean=1.0, seed=7)

        np.testing.assert_array_equal(a.points, b.points)
        assert a.seed == 7

    def test_two_dimensional_draw(self):
        samples = SampleSet.normal(5, mean=[1.0, -1.0], dim=2, seed=0)

        assert samples.points.shape == (5, 2)

    def test_points_are_read_only(self):
        samples = SampleSet([0.0, 1.0])

        with pytest.raises(ValueError):
            samples.points[0, 0] = 3.0

    @pytest.mark.parametrize("points", [[], [np.nan], [[0.0, np.inf]]])
    def test_invalid_points(self, points):
        with pytest.raises(ValueError):
            SampleSet(points)


class TestSampleFiles:
    """Tests for write_samples / read_samples."""

    def test_round_trip(self, tmp_path):
        samples = SampleSet.normal(15, dim=2, seed=4)
        path = write_samples(samples, tmp_path / "x.csv")

        assert path.read_text().splitlines()[0] == "x1,x2"
        np.testing.assert_array_equal(read_samples(path).points, samples.points)

    def test_headerless_file(self, tmp_path):
        path = tmp_path / "raw.csv"
        path.write_text("0.5\n-1.5\n2\n")

        assert read_samples(path).points[:, 0].tolist() == [0.5, -1.5, 2.0]
