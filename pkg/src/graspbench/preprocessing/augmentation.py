"""Rotation, translation and brightness augmentation with grasp bookkeeping."""

import itertools
import json
import logging
import zlib
from pathlib import Path
from typing import Iterator, List, Tuple

import cv2
import numpy as np
from pydantic import BaseModel, Field, field_validator

from ..data.imaging import PathLike
from ..data.sample import Provenance, Sample
from ..data.shuffle import PortableRandom
from ..exceptions import ConfigError, InsufficientSpec
from ..geometry import transform_quad

logger = logging.getLogger(__name__)

Translation = Tuple[float, float]
Combination = Tuple[float, Translation, float]

_GRID = (-40.0, -20.0, 0.0, 20.0, 40.0)


class AugmentSpec(BaseModel):
    """Augmentation parameters; variants are drawn from their cross product."""

    rotations: List[float] = Field(default_factory=lambda: [-20.0, -10.0, 0.0, 10.0, 20.0])
    translations: List[Translation] = Field(
        default_factory=lambda: [(dx, dy) for dx in _GRID for dy in _GRID]
    )
    brightness_factors: List[float] = Field(default_factory=lambda: [1.0])
    target_multiplier: int = Field(125, ge=1)

    @field_validator("brightness_factors")
    @classmethod
    def validate_brightness(cls, v: List[float]) -> List[float]:
        """Brightness multipliers must be positive."""
        if any(b <= 0 for b in v):
            raise ValueError(f"Brightness factors must be positive, got {v}")
        return v

    @classmethod
    def from_file(cls, path: PathLike) -> "AugmentSpec":
        """Load a spec from a JSON file with the field names above."""
        try:
            return cls.model_validate(json.loads(Path(path).read_text()))
        except (OSError, ValueError) as exc:
            raise ConfigError(f"Invalid augment spec {path}: {exc}", {"path": str(path)}) from exc

    def combinations(self) -> List[Combination]:
        return list(itertools.product(self.rotations, self.translations, self.brightness_factors))

    def check_capacity(self) -> None:
        """
        Raises:
            InsufficientSpec: If the cross product is smaller than the multiplier
        """
        available = len(self.rotations) * len(self.translations) * len(self.brightness_factors)
        if available < self.target_multiplier:
            raise InsufficientSpec(
                f"Cross product has {available} combinations, "
                f"fewer than the multiplier {self.target_multiplier}",
                {"available": available, "target_multiplier": self.target_multiplier},
            )


def image_center(shape: Tuple[int, ...]) -> Tuple[float, float]:
    """Rotation centre in pixel coordinates."""
    height, width = shape[:2]
    return ((width - 1) / 2.0, (height - 1) / 2.0)


def affine_matrix(rotation: float, translation: Translation, center: Tuple[float, float]) -> np.ndarray:
    """2 x 3 matrix of ``p -> R(rotation) (p - center) + center + translation``."""
    rad = np.radians(rotation)
    c, s = np.cos(rad), np.sin(rad)
    cx, cy = center
    dx, dy = translation
    return np.array(
        [
            [c, -s, cx - c * cx + s * cy + dx],
            [s, c, cy - s * cx - c * cy + dy],
        ],
        dtype=np.float64,
    )


def adjust_brightness(rgb: np.ndarray, factor: float) -> np.ndarray:
    """Scale every channel, rounding and clamping to [0, 255]."""
    if factor == 1.0:
        return rgb.copy()
    return np.clip(np.rint(rgb.astype(np.float64) * factor), 0, 255).astype(np.uint8)


def apply(
    sample: Sample, rotation: float, translation: Translation, brightness: float
) -> Sample:
    """
    Rotate about the image centre, translate, then scale brightness.

    The image is resampled bilinearly (white border for mask-composited
    images, replicated edges otherwise); mask and depth use nearest
    neighbour. Grasp vertices follow the same rigid transform. Grasps whose
    centre leaves the frame are kept and flagged.

    Returns:
        A new in-memory sample with the same id
    """
    rgb = sample.rgb
    height, width = rgb.shape[:2]
    identity = rotation == 0 and translation[0] == 0 and translation[1] == 0
    center = image_center(rgb.shape)
    matrix = affine_matrix(rotation, translation, center)
    size = (width, height)

    if identity:
        warped = rgb.copy()
    elif sample.provenance == Provenance.MASK_COMPOSITED:
        warped = cv2.warpAffine(
            rgb, matrix, size, flags=cv2.INTER_LINEAR,
            borderMode=cv2.BORDER_CONSTANT, borderValue=(255, 255, 255),
        )
    else:
        warped = cv2.warpAffine(
            rgb, matrix, size, flags=cv2.INTER_LINEAR, borderMode=cv2.BORDER_REPLICATE
        )
    warped = adjust_brightness(warped, brightness)

    mask = sample.mask
    if mask is not None and not identity:
        mask = cv2.warpAffine(
            mask.astype(np.uint8), matrix, size, flags=cv2.INTER_NEAREST,
            borderMode=cv2.BORDER_CONSTANT, borderValue=0,
        ).astype(bool)
    elif mask is not None:
        mask = mask.copy()

    depth = sample.depth
    if depth is not None and not identity:
        depth = cv2.warpAffine(
            depth.astype(np.float32), matrix, size, flags=cv2.INTER_NEAREST,
            borderMode=cv2.BORDER_REPLICATE,
        )
    elif depth is not None:
        depth = depth.copy()

    if identity:
        grasps_pos, grasps_neg = list(sample.grasps_pos), list(sample.grasps_neg)
    else:
        grasps_pos = [transform_quad(q, rotation, translation, center) for q in sample.grasps_pos]
        grasps_neg = [transform_quad(q, rotation, translation, center) for q in sample.grasps_neg]

    flags = list(sample.flags)
    for i, quad in enumerate(grasps_pos):
        x, y = quad.centroid
        if not (0 <= x <= width - 1 and 0 <= y <= height - 1):
            flags.append(f"grasp_out_of_frame:{i}")
            logger.warning("Grasp %d of %s left the frame", i, sample.id)

    return sample.evolve(
        grasps_pos=grasps_pos,
        grasps_neg=grasps_neg,
        rgb_path=None,
        depth_path=None,
        mask_path=None,
        rgb_data=warped,
        depth_data=depth,
        mask_data=mask,
        flags=flags,
    )


def variant_id(sample_id: str, combination: Combination) -> str:
    rotation, (dx, dy), brightness = combination
    return f"{sample_id}__r{rotation:g}_t{dx:g}_{dy:g}_b{brightness:g}"


def choose_combinations(spec: AugmentSpec, seed: int, sample_id: str) -> List[Combination]:
    """
    Pick ``target_multiplier`` combinations for one sample.

    The identity combination, when available, always comes first; the rest
    follow a portable shuffle seeded by ``seed`` and the sample id.
    """
    spec.check_capacity()
    combos = spec.combinations()
    rng = PortableRandom(seed ^ zlib.crc32(sample_id.encode("utf-8")))
    order = rng.permutation(len(combos))
    identity = (0.0, (0.0, 0.0), 1.0)
    if identity in combos:
        first = combos.index(identity)
        order.remove(first)
        order.insert(0, first)
    return [combos[i] for i in order[: spec.target_multiplier]]


def iter_expand(train: List[Sample], spec: AugmentSpec, seed: int) -> Iterator[Sample]:
    """Stream ``target_multiplier`` variants per sample, in (sample id, variant) order."""
    spec.check_capacity()
    for sample in sorted(train, key=lambda s: s.id):
        for combination in choose_combinations(spec, seed, sample.id):
            rotation, translation, brightness = combination
            variant = apply(sample, rotation, translation, brightness)
            variant.id = variant_id(sample.id, combination)
            yield variant
        sample.release()


def expand(train: List[Sample], spec: AugmentSpec, seed: int) -> List[Sample]:
    """
    Expand a training set by ``spec.target_multiplier``.

    Raises:
        InsufficientSpec: If the cross product is smaller than the multiplier
    """
    variants = list(iter_expand(train, spec, seed))
    logger.info("Expanded %d samples into %d variants", len(train), len(variants))
    return variants
