"""Grasp representations, conversions, overlap and angle classes."""

from .angle_codec import (
    BACKGROUND_CLASS,
    BIN_WIDTH,
    NUM_ANGLE_BINS,
    NUM_CLASSES,
    AngleClass,
    angle_to_class,
    class_to_angle,
    is_credible,
)
from .conversions import (
    angled_to_pose,
    fit_pose,
    pose_to_angled,
    pose_to_quad,
    quad_to_pose,
    transform_point,
    transform_pose,
    transform_quad,
)
from .overlap import (
    clip_convex,
    convex_intersection_area,
    jaccard,
    jaccard_quads,
    polygon_area,
    quad_area,
)
from .types import (
    RECTANGLE_TOLERANCE,
    GraspAngled,
    GraspPose5D,
    GraspQuad,
    normalize_angle,
)

__all__ = [
    "BACKGROUND_CLASS",
    "BIN_WIDTH",
    "NUM_ANGLE_BINS",
    "NUM_CLASSES",
    "RECTANGLE_TOLERANCE",
    "AngleClass",
    "GraspAngled",
    "GraspPose5D",
    "GraspQuad",
    "angle_to_class",
    "angled_to_pose",
    "class_to_angle",
    "clip_convex",
    "convex_intersection_area",
    "fit_pose",
    "is_credible",
    "jaccard",
    "jaccard_quads",
    "normalize_angle",
    "polygon_area",
    "pose_to_angled",
    "pose_to_quad",
    "quad_area",
    "quad_to_pose",
    "transform_point",
    "transform_pose",
    "transform_quad",
]
