"""Tests for the run configuration and shared schema types."""

import pytest
from pydantic import TypeAdapter, ValidationError

from pdo_mmd.schemas import (
    CheckId,
    ComplexValue,
    EstimatorMethod,
    ModelFamily,
    OptimizerKind,
    RunConfig,
)


class TestRunConfig:
    """Tests for RunConfig model."""

    def test_defaults(self):
        """Test default values are correct."""
        cfg = RunConfig()

        assert cfg.seed == 0
        assert cfg.method is EstimatorMethod.SPECTRAL
        assert cfg.statistic == "v"
        assert cfg.pad == 8
        assert cfg.functions == 4
        assert cfg.family is ModelFamily.GAUSSIAN
        assert cfg.optimizer is OptimizerKind.NELDER_MEAD
        assert cfg.symbol_source is None

    def test_unknown_key_rejected(self):
        """Test that a misspelt key is an error."""
        with pytest.raises(ValidationError) as exc_info:
            RunConfig.model_validate({"sede": 3})

        assert exc_info.value.errors()[0]["type"] == "extra_forbidden"

    def test_enum_values_from_strings(self):
        cfg = RunConfig.model_validate({"method": "gram", "check": "trunc_hs"})

        assert cfg.method is EstimatorMethod.GRAM
        assert cfg.check is CheckId.TRUNC_HS

    @pytest.mark.parametrize(
        "data",
        [
            {"seed": -1},
            {"dim": 3},
            {"grid_n": 4},
            {"half_width": 0.0},
            {"statistic": "w"},
            {"budget": 49},
            {"trials": 0},
        ],
    )
    def test_out_of_range_rejected(self, data):
        with pytest.raises(ValidationError):
            RunConfig.model_validate(data)

    def test_unknown_tolerance_key(self):
        """Tolerance overrides are checked against the tolerance settings."""
        with pytest.raises(ValidationError, match="psd_floor"):
            RunConfig.model_validate({"tolerances": {"psd_floor": 1e-3}})

    def test_symbol_ref_alias(self):
        """symbol_ref stands in for symbol."""
        cfg = RunConfig.model_validate({"symbol_ref": "gauss.json"})

        assert cfg.symbol_source == "gauss.json"

    def test_symbol_and_symbol_ref_exclusive(self):
        with pytest.raises(ValidationError, match="either symbol or symbol_ref"):
            RunConfig.model_validate({"symbol": "a.json", "symbol_ref": "b.json"})

    def test_inline_symbol_document(self):
        cfg = RunConfig.model_validate({"symbol": {"type": "separable", "terms": []}})

        assert cfg.symbol_source == {"type": "separable", "terms": []}

    def test_log_dict_omits_defaults(self):
        """Only values that differ from the defaults are logged."""
        cfg = RunConfig.model_validate({"seed": 7, "method": "density"})

        assert cfg.log_dict() == {"seed": 7, "method": "density"}

    def test_frozen(self):
        """Test that resolved configs are immutable."""
        cfg = RunConfig()

        with pytest.raises(ValidationError):
            cfg.seed = 3  # type: ignore[misc]


class TestComplexValue:
    """Tests for the complex field type."""

    adapter = TypeAdapter(ComplexValue)

    @pytest.mark.parametrize(
        ("raw", "expected"),
        [(2, 2 + 0j), (0.5, 0.5 + 0j), ([1.0, -2.0], 1 - 2j), ("1 - 2j", 1 - 2j)],
    )
    def test_accepted_forms(self, raw, expected):
        assert self.adapter.validate_python(raw) == expected

    def test_boolean_rejected(self):
        with pytest.raises(ValidationError):
            self.adapter.validate_python(True)

    def test_serialized_as_pair(self):
        assert self.adapter.dump_python(1 - 2j) == [1.0, -2.0]
