"""Mask compositing, RGD conversion and augmentation."""

from .augmentation import (
    AugmentSpec,
    affine_matrix,
    apply,
    choose_combinations,
    expand,
    iter_expand,
    variant_id,
)
from .masking import MaskedImage, composite, depth_range, to_rgd

__all__ = [
    "AugmentSpec",
    "MaskedImage",
    "affine_matrix",
    "apply",
    "choose_combinations",
    "composite",
    "depth_range",
    "expand",
    "iter_expand",
    "to_rgd",
    "variant_id",
]
