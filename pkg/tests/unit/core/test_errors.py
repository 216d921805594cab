"""
Tests for the exception hierarchy.
"""

import pytest

from spinpath.core.errors import (
    CheckError,
    DegeneratePartitionError,
    DimensionError,
    IntensityError,
    InvalidInteractionError,
    ModelParseError,
    RegionTooLargeError,
    SpinpathError,
    TruncationError,
)


class TestErrors:
    """Error construction and classification."""

    @pytest.mark.parametrize("error", [IntensityError, TruncationError, DimensionError])
    def test_value_errors(self, error):
        assert issubclass(error, ValueError)
        assert issubclass(error, SpinpathError)

    def test_cause_is_kept(self):
        cause = RuntimeError("inner")
        error = DegeneratePartitionError("Z = 0", cause)
        assert error.cause is cause
        assert error.message == "Z = 0"

    def test_region_too_large(self):
        error = RegionTooLargeError(14, 12)
        assert (error.size, error.cap) == (14, 12)
        assert "14" in str(error) and "12" in str(error)

    def test_model_parse_error_line(self):
        error = ModelParseError("bad term", line_number=7)
        assert error.line_number == 7
        assert str(error) == "line 7: bad term"
        assert str(ModelParseError("no header")) == "no header"

    def test_invalid_interaction_violations(self):
        error = InvalidInteractionError("invalid", ["a", "b"])
        assert error.violations == ["a", "b"]

    def test_check_error_suite(self):
        assert CheckError("failed", "kms").suite_name == "kms"
