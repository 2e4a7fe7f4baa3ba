"""Mask compositing and RGD conversion."""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..data.imaging import binarize_mask
from ..data.sample import Provenance
from ..exceptions import BadRange
from ..utils.validators import ArrayValidator

WHITE = 255


@dataclass(frozen=True)
class MaskedImage:
    """An RGB image and how it was produced."""

    rgb: np.ndarray
    provenance: Provenance = Provenance.ORIGINAL


def composite(rgb: np.ndarray, mask: np.ndarray) -> MaskedImage:
    """
    Keep object pixels and paint the background pure white.

    Args:
        rgb: H x W x 3 byte image
        mask: H x W map; non-zero (or >= 128 for 8-bit masks) marks the object

    Returns:
        Composited image

    Raises:
        ShapeMismatch: If mask and image sizes differ
    """
    ArrayValidator.validate_rgb(rgb)
    ArrayValidator.validate_same_size(rgb, mask, "mask")
    keep = binarize_mask(mask)
    out = np.where(keep[..., None], rgb, np.uint8(WHITE)).astype(np.uint8)
    return MaskedImage(out, Provenance.MASK_COMPOSITED)


def depth_range(depth: np.ndarray) -> Tuple[float, float]:
    """
    Min and max over the finite depth values of one image.

    Raises:
        BadRange: If there are no finite values or they are all equal
    """
    finite = depth[np.isfinite(depth)]
    if finite.size == 0:
        raise BadRange("Depth map has no finite values")
    low, high = float(finite.min()), float(finite.max())
    ArrayValidator.validate_range(low, high)
    return low, high


def to_rgd(
    rgb: np.ndarray,
    depth: np.ndarray,
    d_min: Optional[float] = None,
    d_max: Optional[float] = None,
) -> MaskedImage:
    """
    Replace the blue channel with normalised depth.

    ``blue = round_half_up(255 * clamp((depth - d_min) / (d_max - d_min), 0, 1))``;
    non-finite depth becomes 0. Missing bounds are taken from the image's own
    finite depth values.

    Raises:
        ShapeMismatch: If depth and image sizes differ
        BadRange: If ``d_min >= d_max``
    """
    ArrayValidator.validate_rgb(rgb)
    ArrayValidator.validate_same_size(rgb, depth, "depth")
    if d_min is None or d_max is None:
        auto_min, auto_max = depth_range(depth)
        d_min = auto_min if d_min is None else d_min
        d_max = auto_max if d_max is None else d_max
    ArrayValidator.validate_range(d_min, d_max)

    depth = depth.astype(np.float64)
    finite = np.isfinite(depth)
    scaled = np.clip((np.where(finite, depth, d_min) - d_min) / (d_max - d_min), 0.0, 1.0)
    blue = np.floor(255.0 * scaled + 0.5)
    blue[~finite] = 0

    out = rgb.copy()
    out[..., 2] = blue.astype(np.uint8)
    return MaskedImage(out, Provenance.RGD)
