"""Tests for grids and grid functions."""

import math

import numpy as np
import pytest

from pdo_mmd.exceptions import GridMismatch, InvalidGrid, OutOfDomain
from pdo_mmd.numgrid import GridFunction, default_grid, make_grid


class TestMakeGrid:
    """Tests for grid construction and validation."""

    def test_spacing_and_size(self):
        """Spacing is 2a/n and the lattice starts at -a."""
        grid = make_grid(1, 64, 8.0)

        assert grid.spacing == (0.25,)
        assert grid.size == 64
        assert grid.axes()[0][0] == -8.0
        assert grid.axes()[0][-1] == pytest.approx(8.0 - 0.25)

    def test_2d_lattice_is_row_major(self):
        """First axis varies slowest."""
        grid = make_grid(2, 8, 4.0)
        lattice = grid.lattice()

        assert lattice.shape == (64, 2)
        assert lattice[0].tolist() == [-4.0, -4.0]
        assert lattice[1].tolist() == [-4.0, -3.0]
        assert lattice[8].tolist() == [-3.0, -4.0]

    @pytest.mark.parametrize(
        ("dim", "n", "half_width"),
        [(3, 16, 1.0), (1, 12, 1.0), (1, 4, 1.0), (1, 16, 0.0), (1, 16, math.inf), (2, 16, [1.0])],
    )
    def test_invalid_parameters_rejected(self, dim, n, half_width):
        """Bad dimension, non-power-of-two size and bad widths raise InvalidGrid."""
        with pytest.raises(InvalidGrid):
            make_grid(dim, n, half_width)

    def test_anisotropic_half_widths(self):
        """Per-axis half widths are kept and described as a list."""
        grid = make_grid(2, 8, [2.0, 4.0])

        assert grid.spacing == (0.5, 1.0)
        assert grid.describe() == {"dim": 2, "n": 8, "half_width": [2.0, 4.0]}


class TestDualGrid:
    """Tests for the frequency grid."""

    def test_dual_spacing_product(self):
        """dx * dy = 2 pi / n on every axis."""
        grid = make_grid(1, 128, 16.0)
        dual = grid.dual()

        assert grid.spacing[0] * dual.spacing[0] == pytest.approx(2 * math.pi / 128)
        assert dual.half_width[0] == pytest.approx(math.pi / grid.spacing[0])

    def test_dual_is_an_involution(self):
        """The dual of the dual is the original lattice."""
        grid = make_grid(2, 16, 6.0)
        assert grid.dual().dual() == grid

    def test_refined_keeps_box(self):
        """Refinement doubles the points and halves the spacing."""
        grid = make_grid(1, 32, 4.0)
        fine = grid.refined()

        assert fine.points_per_axis == 64
        assert fine.half_width == grid.half_width


class TestLocate:
    """Tests for point lookup."""

    def test_nearest_lattice_point(self):
        """Points snap to the nearest lattice index."""
        grid = make_grid(1, 8, 4.0)
        idx = grid.locate([-4.0, -3.4, 0.1, 3.9])

        assert idx.tolist() == [0, 1, 4, 7]

    def test_outside_box_raises(self):
        """The box is half-open: +half_width is outside."""
        grid = make_grid(1, 8, 4.0)

        with pytest.raises(OutOfDomain):
            grid.locate([4.0])

    def test_dimension_mismatch(self):
        """Points of the wrong dimension raise GridMismatch."""
        grid = make_grid(2, 8, 4.0)

        with pytest.raises(GridMismatch):
            grid.as_points(np.zeros((3, 3)))


class TestGridFunction:
    """Tests for sampled functions."""

    def test_value_count_must_match(self, grid):
        """A value array of the wrong length is rejected."""
        with pytest.raises(GridMismatch):
            GridFunction(grid, np.zeros(grid.size + 1))

    def test_non_finite_values_rejected(self, grid):
        """NaN and inf never enter a grid function."""
        values = np.zeros(grid.size)
        values[3] = np.nan

        with pytest.raises(ValueError, match="finite"):
            GridFunction(grid, values)

    def test_values_are_read_only(self, grid):
        """Stored values cannot be mutated in place."""
        f = GridFunction.constant(grid, 1.0)

        with pytest.raises(ValueError):
            f.values[0] = 2.0

    def test_arithmetic_requires_same_grid(self, grid):
        """Adding functions on different lattices raises GridMismatch."""
        f = GridFunction.zeros(grid)
        g = GridFunction.zeros(make_grid(1, 64, 16.0))

        with pytest.raises(GridMismatch):
            _ = f + g

    def test_reflection(self, grid):
        """reflected() evaluates f(-x) on the symmetric part of the lattice."""
        f = GridFunction.from_callable(grid, lambda x: x[:, 0])
        reflected = f.reflected()

        # Skip the unmatched endpoint -half_width
        np.testing.assert_allclose(reflected.real[1:], -f.real[1:], atol=1e-12)

    def test_linear_sampling(self, grid):
        """Linear interpolation is exact for linear functions."""
        f = GridFunction.from_callable(grid, lambda x: 2.0 * x[:, 0] + 1.0)
        values = f.sample([0.1, -3.3], method="linear")

        np.testing.assert_allclose(values.real, [1.2, -5.6], atol=1e-12)

    def test_sampling_outside(self, grid):
        """Outside points raise by default and read zero on request."""
        f = GridFunction.constant(grid, 1.0)

        with pytest.raises(OutOfDomain):
            f.sample([100.0])
        assert f.sample([100.0], outside="zero")[0] == 0.0


class TestDefaultGrid:
    """Tests for the settings-backed default grid."""

    def test_default_1d(self):
        """512 points on [-16, 16) unless overridden."""
        grid = default_grid()

        assert grid.dim == 1
        assert grid.points_per_axis == 512
        assert grid.half_width == (16.0,)

    def test_default_2d(self):
        """64 x 64 points on [-8, 8)^2."""
        grid = default_grid(2)

        assert grid.points_per_axis == 64
        assert grid.half_width == (8.0, 8.0)

    def test_env_override(self, monkeypatch):
        """PDOMMD_GRID__POINTS_1D changes the default lattice."""
        monkeypatch.setenv("PDOMMD_GRID__POINTS_1D", "256")

        assert default_grid(1).points_per_axis == 256
