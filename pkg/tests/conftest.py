"""Pytest configuration and shared fixtures.

Usage Guide:
- For grids, symbols and samples: import factories from tests.factories
- Fixtures below cover the small working grids most tests share
- Settings are cached process-wide; the autouse fixture clears the cache so
  tolerance overrides made by one test never leak into the next
"""

from collections.abc import Generator
from pathlib import Path

import pytest

from pdo_mmd.config import get_settings
from pdo_mmd.logging import reset_logging
from pdo_mmd.numgrid import Grid
from pdo_mmd.symbols import SeparableSymbol
from tests.factories import make_gaussian_symbol, make_test_grid


@pytest.fixture(autouse=True)
def _fresh_settings(
    monkeypatch: pytest.MonkeyPatch, tmp_path: Path
) -> Generator[None, None, None]:
    """Run in a scratch directory (no .env, default outputs land there) with fresh settings."""
    monkeypatch.chdir(tmp_path)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
    reset_logging()


# -----------------------------------------------------------------------------
# Grid and symbol fixtures
#
# Small lattices keep dense O(n^2) matrices cheap. The 1D grid has data-grid
# spacing pi/16, enough to resolve unit-variance densities.
# -----------------------------------------------------------------------------
@pytest.fixture
def grid() -> Grid:
    """1D feature grid (128 points on [-16, 16))."""
    return make_test_grid(1)


@pytest.fixture
def grid_2d() -> Grid:
    """2D feature grid (16 x 16 points on [-6, 6)^2)."""
    return make_test_grid(2)


@pytest.fixture
def gaussian_symbol() -> SeparableSymbol:
    """Rank-one symbol exp(-x^2/2) * 1 with kernel sqrt(pi) exp(-(s-t)^2/4)."""
    return make_gaussian_symbol()
