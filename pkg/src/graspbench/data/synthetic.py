"""Seeded synthetic bar scenes for desk-scale pipeline checks.

Each scene is a solid bar on a white (or cluttered) background with a mask,
a depth map and three ground-truth grasps closing across the bar.
"""

from typing import List, Literal, Tuple

import cv2
import numpy as np

from ..geometry import GraspPose5D, normalize_angle, pose_to_quad
from .sample import Sample

Background = Literal["white", "clutter"]

IMAGE_SIZE = (240, 320)
BAR_SIZE = (100.0, 20.0)
GRASP_OPENING = 30.0
GRASP_PLATE = 30.0
GRASP_OFFSETS = (-30.0, 0.0, 30.0)
BACKGROUND_DEPTH = 1.0
OBJECT_DEPTH = 0.9
CLUTTER_DEPTH = 0.95
CLUTTER_SHAPES = 8
# fixed-point bits for sub-pixel polygon rasterisation
_SHIFT = 4


def fill_pose(canvas: np.ndarray, pose: GraspPose5D, value) -> None:
    """Rasterise the rectangle of ``pose`` into ``canvas`` in place."""
    corners = np.array(pose_to_quad(pose).as_list()) * (1 << _SHIFT)
    cv2.fillPoly(canvas, [np.round(corners).astype(np.int32)], value, shift=_SHIFT)


def bar_grasps(bar: GraspPose5D) -> List[GraspPose5D]:
    """Grasps closing across the bar at fixed offsets along it."""
    rad = np.radians(bar.theta)
    direction = (np.cos(rad), np.sin(rad))
    closing = normalize_angle(bar.theta + 90.0)
    return [
        GraspPose5D(
            x=bar.x + offset * direction[0],
            y=bar.y + offset * direction[1],
            theta=closing,
            h=GRASP_PLATE,
            w=GRASP_OPENING,
        )
        for offset in GRASP_OFFSETS
    ]


def _draw_clutter(rng: np.random.Generator, rgb: np.ndarray, depth: np.ndarray) -> None:
    height, width = rgb.shape[:2]
    for _ in range(CLUTTER_SHAPES):
        x0, y0 = int(rng.integers(0, width - 20)), int(rng.integers(0, height - 20))
        x1 = min(width - 1, x0 + int(rng.integers(15, 80)))
        y1 = min(height - 1, y0 + int(rng.integers(15, 80)))
        color = tuple(int(c) for c in rng.integers(0, 230, size=3))
        cv2.rectangle(rgb, (x0, y0), (x1, y1), color, thickness=-1)
        depth[y0:y1 + 1, x0:x1 + 1] = CLUTTER_DEPTH


def make_bar_scene(
    rng: np.random.Generator,
    scene_id: str,
    category: str = "bar",
    background: Background = "white",
    image_size: Tuple[int, int] = IMAGE_SIZE,
    bar_size: Tuple[float, float] = BAR_SIZE,
) -> Tuple[Sample, GraspPose5D]:
    """
    Draw one bar scene.

    Args:
        rng: Source of the bar position, orientation and colours
        scene_id: Sample id
        category: Object category label
        background: "white" or "clutter"
        image_size: (height, width)
        bar_size: (length, thickness) in pixels

    Returns:
        The sample and the bar's own pose (its long axis as ``theta``)
    """
    height, width = image_size
    length, thickness = bar_size
    margin = 0.5 * float(np.hypot(length, thickness)) + 2.0
    bar = GraspPose5D(
        x=float(rng.uniform(margin, width - margin)),
        y=float(rng.uniform(margin, height - margin)),
        theta=float(rng.uniform(-90.0, 90.0)),
        h=thickness,
        w=length,
    )

    rgb = np.full((height, width, 3), 255, dtype=np.uint8)
    depth = np.full((height, width), BACKGROUND_DEPTH, dtype=np.float32)
    if background == "clutter":
        _draw_clutter(rng, rgb, depth)

    mask = np.zeros((height, width), dtype=np.uint8)
    fill_pose(mask, bar, 1)
    object_pixels = mask.astype(bool)
    rgb[object_pixels] = rng.integers(20, 200, size=3).astype(np.uint8)
    depth[object_pixels] = OBJECT_DEPTH

    sample = Sample(
        id=scene_id,
        grasps_pos=[pose_to_quad(g) for g in bar_grasps(bar)],
        object_category=category,
        rgb_data=rgb,
        depth_data=depth,
        mask_data=object_pixels,
    )
    return sample, bar


def make_bar_scenes(
    n: int,
    seed: int = 0,
    n_categories: int = 1,
    background: Background = "white",
    image_size: Tuple[int, int] = IMAGE_SIZE,
) -> List[Sample]:
    """``n`` seeded bar scenes with ids ``bar_00000``... and round-robin categories."""
    rng = np.random.default_rng(seed)
    return [
        make_bar_scene(
            rng,
            scene_id=f"bar_{i:05d}",
            category=f"object_{i % n_categories:02d}",
            background=background,
            image_size=image_size,
        )[0]
        for i in range(n)
    ]
