"""Non-learned grasp prediction from the principal axes of a binary mask."""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ...data.imaging import binarize_mask
from ...data.sample import Sample
from ...exceptions import EmptyMask
from ...geometry import GraspPose5D, normalize_angle
from .base import BaseGraspPredictor, Prediction

logger = logging.getLogger(__name__)

MIN_PIXELS = 10
# relative eigenvalue gap at or below which the second moments count as isotropic
ISOTROPY_GAP = 1e-2
WHITE_LEVEL = 250
DEGENERATE_FLAG = "degenerate_mask"


@dataclass(frozen=True)
class PCAGrasp:
    """A PCA grasp and whether the mask was too isotropic to orient it."""

    pose: GraspPose5D
    degenerate: bool = False


def pca_grasp(
    mask: Optional[np.ndarray], width_factor: float = 1.2, height_factor: float = 0.6
) -> PCAGrasp:
    """
    Grasp across the minor principal axis of the mask pixels.

    Pixel coordinates are ``x = column``, ``y = row``. The grasp is centred
    on the mask centroid, closes along the minor axis with opening
    ``width_factor`` times the minor extent, and has plate size
    ``height_factor`` times the major extent. Extents count pixels, so a
    20-pixel-thick bar has minor extent 20.

    Raises:
        EmptyMask: If the mask has fewer than 10 object pixels
    """
    if mask is None:
        raise EmptyMask("Sample has no mask")
    rows, cols = np.nonzero(binarize_mask(mask))
    if rows.size < MIN_PIXELS:
        raise EmptyMask(
            f"Mask has {rows.size} object pixels, need at least {MIN_PIXELS}",
            {"pixels": int(rows.size)},
        )

    coords = np.column_stack((cols, rows)).astype(np.float64)
    centroid = coords.mean(axis=0)
    centered = coords - centroid
    eigvals, eigvecs = np.linalg.eigh(np.cov(centered, rowvar=False))

    degenerate = eigvals[1] <= 0 or (eigvals[1] - eigvals[0]) / eigvals[1] <= ISOTROPY_GAP
    if degenerate:
        minor, major = np.array([1.0, 0.0]), np.array([0.0, 1.0])
        theta = 0.0
    else:
        minor, major = eigvecs[:, 0], eigvecs[:, 1]
        theta = normalize_angle(math.degrees(math.atan2(minor[1], minor[0])))

    along_minor = centered @ minor
    along_major = centered @ major
    minor_extent = float(along_minor.max() - along_minor.min() + 1.0)
    major_extent = float(along_major.max() - along_major.min() + 1.0)

    pose = GraspPose5D(
        x=float(centroid[0]),
        y=float(centroid[1]),
        theta=theta,
        h=height_factor * major_extent,
        w=width_factor * minor_extent,
    )
    return PCAGrasp(pose, bool(degenerate))


def pca_baseline(sample: Sample, width_factor: float = 1.2, height_factor: float = 0.6) -> GraspPose5D:
    """
    PCA grasp of a sample's mask.

    Raises:
        EmptyMask: If the sample has no mask or too few object pixels
    """
    result = pca_grasp(sample.mask, width_factor, height_factor)
    if result.degenerate:
        logger.warning("Mask of %s is isotropic; grasp angle defaults to 0", sample.id)
    return result.pose


def foreground_mask(rgb: np.ndarray, white_level: int = WHITE_LEVEL) -> np.ndarray:
    """Pixels with any channel below ``white_level``."""
    return np.any(rgb < white_level, axis=2)


class MaskPCAPredictor(BaseGraspPredictor):
    """PCA on the sample's own object mask."""

    @property
    def predictor_type(self) -> str:
        return "mask_pca"

    def predict(self, sample: Sample) -> Prediction:
        result = pca_grasp(sample.mask, self.width_factor, self.height_factor)
        return Prediction(result.pose, [DEGENERATE_FLAG] if result.degenerate else [])


class ForegroundPCAPredictor(BaseGraspPredictor):
    """PCA on every non-white pixel of the image; needs no mask."""

    @property
    def predictor_type(self) -> str:
        return "foreground_pca"

    def predict(self, sample: Sample) -> Prediction:
        result = pca_grasp(foreground_mask(sample.rgb), self.width_factor, self.height_factor)
        return Prediction(result.pose, [DEGENERATE_FLAG] if result.degenerate else [])
