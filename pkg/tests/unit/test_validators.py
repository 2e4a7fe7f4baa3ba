"""Unit tests for validators."""

import numpy as np
import pytest

from src.graspbench.exceptions import BadRange, ConfigError, InvalidSample, ShapeMismatch
from src.graspbench.utils.validators import ArrayValidator, ParameterValidator


class TestArrayValidator:
    """Test suite for array validator."""

    def test_validate_rgb_valid(self):
        """Test a byte image with three channels."""
        ArrayValidator.validate_rgb(np.zeros((4, 5, 3), dtype=np.uint8))
        # Should not raise

    def test_validate_rgb_wrong_channels(self):
        """Test grayscale images are rejected."""
        with pytest.raises(InvalidSample, match="H x W x 3"):
            ArrayValidator.validate_rgb(np.zeros((4, 5), dtype=np.uint8))

    def test_validate_rgb_wrong_dtype(self):
        """Test float images are rejected."""
        with pytest.raises(InvalidSample, match="uint8"):
            ArrayValidator.validate_rgb(np.zeros((4, 5, 3), dtype=np.float32))

    def test_validate_same_size(self):
        """Test maps must share the image size."""
        rgb = np.zeros((4, 5, 3), dtype=np.uint8)
        ArrayValidator.validate_same_size(rgb, np.zeros((4, 5)), "depth")
        with pytest.raises(ShapeMismatch, match="depth shape"):
            ArrayValidator.validate_same_size(rgb, np.zeros((5, 4)), "depth")

    def test_validate_same_size_rejects_stacks(self):
        """Test three-dimensional maps are rejected."""
        with pytest.raises(ShapeMismatch):
            ArrayValidator.validate_same_size(np.zeros((4, 5, 3), dtype=np.uint8), np.zeros((4, 5, 1)), "mask")

    @pytest.mark.parametrize("low,high", [(1.0, 1.0), (2.0, 1.0), (0.0, float("inf")), (float("nan"), 1.0)])
    def test_validate_range_invalid(self, low, high):
        """Test empty, inverted and non-finite ranges."""
        with pytest.raises(BadRange):
            ArrayValidator.validate_range(low, high)

    def test_validate_range_valid(self):
        """Test an increasing range."""
        ArrayValidator.validate_range(0.5, 1.5)


class TestParameterValidator:
    """Test suite for parameter validator."""

    def test_validate_positive(self):
        """Test positive values pass and zero fails."""
        ParameterValidator.validate_positive(0.1, "stride")
        with pytest.raises(ConfigError, match="stride must be positive"):
            ParameterValidator.validate_positive(0, "stride")

    def test_validate_non_negative(self):
        """Test zero passes and negatives fail."""
        ParameterValidator.validate_non_negative(0, "lam")
        with pytest.raises(ConfigError, match="lam must be non-negative"):
            ParameterValidator.validate_non_negative(-0.5, "lam")

    def test_clean_overrides(self):
        """Test unset overrides are dropped."""
        cleaned = ParameterValidator.clean_overrides({"seed": 3, "workers": None, "flag": False})
        assert cleaned == {"seed": 3, "flag": False}
