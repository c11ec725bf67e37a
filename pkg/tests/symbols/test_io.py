"""Tests for JSON symbol files."""

import json
import math

import numpy as np
import pytest
from pydantic import ValidationError

from pdo_mmd.exceptions import GridMismatch
from pdo_mmd.numgrid import make_grid
from pdo_mmd.symbols import (
    DenseSymbol,
    MaternProfile,
    RationalQuadraticProfile,
    SeparableSymbol,
    SpectralRoot,
    densify,
    dump_symbol,
    from_kernel_profile,
    gaussian_envelope_symbol,
    load_symbol,
    parse_symbol,
    read_dense_values,
)
from tests.factories import make_separable_symbol, symbol_document, write_symbol_file


class TestParseSymbol:
    """Tests for decoding symbol documents."""

    def test_separable_document(self, grid):
        """Inline terms and the grid come back from the document."""
        sym, feature_grid = parse_symbol(symbol_document())

        assert isinstance(sym, SeparableSymbol)
        assert sym.rank == 1
        assert feature_grid == grid

    def test_missing_grid_uses_settings(self):
        """Without a grid the settings default applies."""
        doc = symbol_document()
        del doc["grid"]

        _, feature_grid = parse_symbol(doc)
        assert feature_grid.points_per_axis == 512

    def test_translation_invariant_document(self, grid):
        """A profile document builds the rank-one square-root symbol."""
        doc = {
            "type": "translation_invariant",
            "profile": {
                "kind": "gauss_hermite",
                "width": math.sqrt(2.0),
                "scale": math.sqrt(math.pi),
            },
            "grid": grid.describe(),
        }

        sym, _ = parse_symbol(doc)
        assert isinstance(sym, SeparableSymbol)
        x = grid.lattice()[:, 0]
        np.testing.assert_allclose(sym.terms[0].f.values.real, np.exp(-0.5 * x**2), atol=1e-8)

    def test_kernel_profile_document(self, grid):
        """A named kernel profile builds its closed spectral root."""
        doc = {
            "type": "translation_invariant",
            "profile": {"kind": "matern", "nu": 2.5, "length": 0.8},
            "grid": grid.describe(),
        }

        sym, _ = parse_symbol(doc)
        assert isinstance(sym, SeparableSymbol)
        assert sym.terms[0].f == SpectralRoot(profile=MaternProfile(nu=2.5, length=0.8))

    def test_unknown_type(self):
        """The type discriminator is required to match a known kind."""
        with pytest.raises(ValidationError):
            parse_symbol({"type": "lowrank", "terms": []})


class TestSymbolFiles:
    """Tests for dump_symbol / load_symbol."""

    def test_separable_written_inline(self, grid, tmp_path):
        """Analytic separable symbols stay analytic on disk."""
        sym = make_separable_symbol(rank=3, feature_g=True)
        path = dump_symbol(sym, tmp_path / "symbol.json", grid)

        assert json.loads(path.read_text())["type"] == "separable"
        back, back_grid = load_symbol(path)
        assert back_grid == grid
        np.testing.assert_allclose(
            densify(back, grid, grid.dual()).values,
            densify(sym, grid, grid.dual()).values,
            rtol=1e-15,
        )

    def test_kernel_profile_written_inline(self, grid, tmp_path):
        sym = from_kernel_profile(RationalQuadraticProfile(length=1.2, alpha=2.0))
        path = dump_symbol(sym, tmp_path / "symbol.json", grid)

        assert json.loads(path.read_text())["type"] == "separable"
        back, _ = load_symbol(path)
        assert back.terms[0].f == sym.terms[0].f
        assert back.terms[0].g == sym.terms[0].g

    def test_dense_round_trip(self, tmp_path):
        """Dense symbols write a sibling values CSV that reads back exactly."""
        grid = make_grid(1, 16, 6.0)
        sym = gaussian_envelope_symbol(1.0, 1.5, coupling=0.1, grid=grid)
        path = dump_symbol(sym, tmp_path / "out" / "symbol.json")

        doc = json.loads(path.read_text())
        assert doc["type"] == "dense"
        assert (path.parent / doc["values_file"]).exists()

        back, _ = load_symbol(path)
        assert isinstance(back, DenseSymbol)
        np.testing.assert_array_equal(back.values, sym.values)

    def test_grid_factors_are_densified(self, grid, tmp_path):
        """Grid-function factors cannot be written inline."""
        doc = {
            "type": "translation_invariant",
            "profile": {"kind": "gauss_hermite", "width": math.sqrt(2.0)},
            "grid": grid.describe(),
        }
        sym, _ = parse_symbol(doc)

        path = dump_symbol(sym, tmp_path / "symbol.json")
        assert json.loads(path.read_text())["type"] == "dense"

    def test_relative_values_path(self, tmp_path, monkeypatch):
        """values_file resolves against the JSON file's directory, not the cwd."""
        grid = make_grid(1, 16, 6.0)
        dump_symbol(gaussian_envelope_symbol(1.0, 1.0, grid=grid), tmp_path / "symbol.json")
        doc = json.loads((tmp_path / "symbol.json").read_text())
        (tmp_path / "elsewhere").mkdir()
        monkeypatch.chdir(tmp_path / "elsewhere")

        sym, _ = load_symbol(write_symbol_file(tmp_path, doc))
        assert isinstance(sym, DenseSymbol)

    def test_incomplete_values_file(self, tmp_path):
        """A values CSV missing entries is a grid mismatch."""
        grid = make_grid(1, 16, 6.0)
        path = tmp_path / "values.csv"
        path.write_text("i,j,re,im\n0,0,1,0\n")

        with pytest.raises(GridMismatch):
            read_dense_values(path, grid, grid.dual())
