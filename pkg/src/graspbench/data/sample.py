"""Scene samples, split requests and load reports."""

from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import List, Literal, Optional

import numpy as np

from ..exceptions import ConfigError, InvalidSample
from ..geometry import GraspPose5D, GraspQuad, fit_pose, quad_to_pose
from ..geometry.types import RECTANGLE_TOLERANCE
from ..utils.validators import ArrayValidator
from .imaging import read_depth, read_mask, read_rgb

# Annotations may run past the frame by this fraction of the image size
FRAME_MARGIN = 0.25


class Provenance(str, Enum):
    """Where a sample's RGB image came from."""

    ORIGINAL = "original"
    MASK_COMPOSITED = "mask_composited"
    RGD = "rgd"


@dataclass
class Sample:
    """
    One scene: image, optional depth and mask, grasps and a category label.

    Images are either held in memory (``*_data``) or loaded lazily from the
    referenced paths on first access.
    """

    id: str
    grasps_pos: List[GraspQuad]
    object_category: str = ""
    grasps_neg: List[GraspQuad] = field(default_factory=list)
    rgb_path: Optional[Path] = None
    depth_path: Optional[Path] = None
    mask_path: Optional[Path] = None
    rgb_data: Optional[np.ndarray] = field(default=None, repr=False)
    depth_data: Optional[np.ndarray] = field(default=None, repr=False)
    mask_data: Optional[np.ndarray] = field(default=None, repr=False)
    provenance: Provenance = Provenance.ORIGINAL
    flags: List[str] = field(default_factory=list)

    @property
    def rgb(self) -> np.ndarray:
        if self.rgb_data is None:
            if self.rgb_path is None:
                raise InvalidSample(f"Sample {self.id} has no RGB image")
            self.rgb_data = read_rgb(self.rgb_path)
        return self.rgb_data

    @property
    def depth(self) -> Optional[np.ndarray]:
        if self.depth_data is None and self.depth_path is not None:
            self.depth_data = read_depth(self.depth_path)
        return self.depth_data

    @property
    def mask(self) -> Optional[np.ndarray]:
        if self.mask_data is None and self.mask_path is not None:
            self.mask_data = read_mask(self.mask_path)
        return self.mask_data

    @property
    def has_depth(self) -> bool:
        return self.depth_data is not None or self.depth_path is not None

    @property
    def has_mask(self) -> bool:
        return self.mask_data is not None or self.mask_path is not None

    def release(self) -> None:
        """Drop cached arrays that can be re-read from disk."""
        if self.rgb_path is not None:
            self.rgb_data = None
        if self.depth_path is not None:
            self.depth_data = None
        if self.mask_path is not None:
            self.mask_data = None

    def poses(self, tol: float = RECTANGLE_TOLERANCE, strict: bool = False) -> List[GraspPose5D]:
        """
        Positive grasps as poses.

        Args:
            tol: Rectangle tolerance for the exact conversion
            strict: Raise on non-rectangular quads instead of fitting them
        """
        out = []
        for quad in self.grasps_pos:
            if strict or quad.is_rectangle(tol):
                out.append(quad_to_pose(quad, tol))
            else:
                out.append(fit_pose(quad))
        return out

    def evolve(self, **changes) -> "Sample":
        """Copy with some fields replaced; flags are copied, not shared."""
        changes.setdefault("flags", list(self.flags))
        return replace(self, **changes)

    def out_of_frame_grasps(self) -> List[int]:
        """Indices of grasps with a vertex beyond the tolerated frame margin."""
        height, width = self.rgb.shape[:2]
        x_lo, x_hi = -FRAME_MARGIN * width, (1 + FRAME_MARGIN) * width
        y_lo, y_hi = -FRAME_MARGIN * height, (1 + FRAME_MARGIN) * height
        bad = []
        for i, quad in enumerate(self.grasps_pos):
            if any(not (x_lo <= x <= x_hi and y_lo <= y <= y_hi) for x, y in quad):
                bad.append(i)
        return bad

    def validate(self) -> None:
        """
        Check image shapes and grasp extents.

        Raises:
            InvalidSample: On a malformed image or out-of-frame annotations
            ShapeMismatch: If mask or depth differ in size from the image
        """
        ArrayValidator.validate_rgb(self.rgb)
        if self.mask is not None:
            ArrayValidator.validate_same_size(self.rgb, self.mask, "mask")
        if self.depth is not None:
            ArrayValidator.validate_same_size(self.rgb, self.depth, "depth")
        bad = self.out_of_frame_grasps()
        if bad:
            raise InvalidSample(
                f"Sample {self.id} has grasps outside the frame margin",
                {"id": self.id, "grasps": bad},
            )


SplitMode = Literal["image_wise", "object_wise"]


@dataclass(frozen=True)
class SplitSpec:
    """Train/test split request; the default ratio is 4:1."""

    mode: SplitMode = "image_wise"
    ratio_train: float = 0.8
    seed: int = 0

    def __post_init__(self) -> None:
        """Validate split parameters."""
        if self.mode not in ("image_wise", "object_wise"):
            raise ConfigError(f"Unknown split mode: {self.mode}", {"mode": self.mode})
        if not 0.0 < self.ratio_train < 1.0:
            raise ConfigError(
                f"ratio_train must be in (0, 1), got {self.ratio_train}",
                {"ratio_train": self.ratio_train},
            )
        if self.seed < 0:
            raise ConfigError(f"seed must be non-negative, got {self.seed}")


@dataclass
class LoadReport:
    """What a loader found and what it had to skip or fix."""

    source: str
    n_samples: int = 0
    n_rectangles: int = 0
    dropped_non_finite: int = 0
    repaired: int = 0
    empty_samples: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def merge(self, other: "LoadReport") -> None:
        self.n_samples += other.n_samples
        self.n_rectangles += other.n_rectangles
        self.dropped_non_finite += other.dropped_non_finite
        self.repaired += other.repaired
        self.empty_samples.extend(other.empty_samples)
        self.warnings.extend(other.warnings)

    def summary(self) -> str:
        return (
            f"{self.source}: {self.n_samples} samples, {self.n_rectangles} rectangles, "
            f"{self.dropped_non_finite} dropped (non-finite), {self.repaired} repaired, "
            f"{len(self.empty_samples)} without grasps"
        )
