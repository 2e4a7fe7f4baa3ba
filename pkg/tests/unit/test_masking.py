"""Unit tests for mask compositing and RGD conversion."""

import numpy as np
import pytest

from src.graspbench.data.sample import Provenance
from src.graspbench.exceptions import BadRange, InvalidSample, ShapeMismatch
from src.graspbench.preprocessing import composite, depth_range, to_rgd


@pytest.fixture
def rgb() -> np.ndarray:
    image = np.zeros((4, 5, 3), dtype=np.uint8)
    image[..., 0] = 10
    image[..., 1] = 20
    image[..., 2] = 30
    return image


class TestComposite:
    """Tests for mask compositing."""

    def test_background_is_white(self, rgb):
        """Test object pixels are kept and the rest painted white."""
        mask = np.zeros((4, 5), dtype=bool)
        mask[1:3, 1:4] = True
        result = composite(rgb, mask)
        assert result.provenance == Provenance.MASK_COMPOSITED
        assert np.array_equal(result.rgb[mask], rgb[mask])
        assert np.all(result.rgb[~mask] == 255)

    def test_byte_mask_threshold(self, rgb):
        """Test 8-bit masks count as object from 128 up."""
        mask = np.array([[0, 127, 128, 255, 0]] * 4, dtype=np.uint8)
        result = composite(rgb, mask)
        assert np.all(result.rgb[:, 1] == 255)
        assert np.array_equal(result.rgb[:, 2], rgb[:, 2])

    def test_full_mask_is_identity(self, rgb):
        """Test an all-object mask changes nothing."""
        assert np.array_equal(composite(rgb, np.ones((4, 5), dtype=bool)).rgb, rgb)

    def test_empty_mask_is_all_white(self, rgb):
        """Test an all-background mask paints the whole image white."""
        result = composite(rgb, np.zeros((4, 5), dtype=bool))
        assert np.all(result.rgb == 255)

    @pytest.mark.parametrize("seed", range(10))
    def test_random_masks(self, seed):
        """Test random images keep object pixels, whiten the rest and composite idempotently."""
        rng = np.random.default_rng(seed)
        image = rng.integers(0, 256, size=(24, 32, 3), dtype=np.uint8)
        mask = rng.random((24, 32)) < rng.uniform(0.1, 0.9)
        once = composite(image, mask).rgb
        assert np.array_equal(once[mask], image[mask])
        assert np.all(once[~mask] == (255, 255, 255))
        assert np.array_equal(composite(once, mask).rgb, once)

    def test_random_byte_masks(self, rng):
        """Test 8-bit masks select the same pixels as their thresholded form."""
        image = rng.integers(0, 256, size=(16, 16, 3), dtype=np.uint8)
        mask = rng.integers(0, 256, size=(16, 16), dtype=np.uint8)
        assert np.array_equal(composite(image, mask).rgb, composite(image, mask >= 128).rgb)

    def test_shape_mismatch(self, rgb):
        """Test masks must match the image size."""
        with pytest.raises(ShapeMismatch):
            composite(rgb, np.ones((5, 4), dtype=bool))

    def test_not_rgb(self):
        """Test single-channel images are rejected."""
        with pytest.raises(InvalidSample):
            composite(np.zeros((4, 5), dtype=np.uint8), np.ones((4, 5), dtype=bool))


class TestToRGD:
    """Tests for the depth-in-blue conversion."""

    def test_blue_channel(self, rgb):
        """Test normalisation, rounding half up and clamping."""
        depth = np.array([[0.0, 0.5, 1.0, -1.0, 2.0]] * 4)
        result = to_rgd(rgb, depth, d_min=0.0, d_max=1.0)
        assert result.provenance == Provenance.RGD
        assert result.rgb[0, :, 2].tolist() == [0, 128, 255, 0, 255]
        assert np.array_equal(result.rgb[..., :2], rgb[..., :2])

    def test_non_finite_depth(self, rgb):
        """Test NaN and infinite depth map to zero."""
        depth = np.array([[np.nan, np.inf, -np.inf, 0.0, 1.0]] * 4)
        result = to_rgd(rgb, depth, d_min=0.0, d_max=1.0)
        assert result.rgb[0, :, 2].tolist() == [0, 0, 0, 0, 255]

    def test_automatic_range(self, rgb):
        """Test missing bounds come from the finite depth values."""
        depth = np.array([[2.0, 3.0, 4.0, np.nan, 3.0]] * 4)
        assert depth_range(depth) == (2.0, 4.0)
        result = to_rgd(rgb, depth)
        assert result.rgb[0, :, 2].tolist() == [0, 128, 255, 0, 128]

    def test_constant_depth(self, rgb):
        """Test a flat depth map has no usable range."""
        with pytest.raises(BadRange):
            to_rgd(rgb, np.ones((4, 5)))

    def test_inverted_range(self, rgb):
        """Test explicit bounds must be increasing."""
        with pytest.raises(BadRange):
            to_rgd(rgb, np.zeros((4, 5)), d_min=1.0, d_max=1.0)

    def test_shape_mismatch(self, rgb):
        """Test depth must match the image size."""
        with pytest.raises(ShapeMismatch):
            to_rgd(rgb, np.zeros((3, 5)), d_min=0.0, d_max=1.0)

    def test_input_untouched(self, rgb):
        """Test the source image is not modified."""
        before = rgb.copy()
        to_rgd(rgb, np.zeros((4, 5)), d_min=0.0, d_max=1.0)
        assert np.array_equal(rgb, before)
