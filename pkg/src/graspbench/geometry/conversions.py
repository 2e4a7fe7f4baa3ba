"""Conversions between the pose, quad and angled-box grasp forms."""

import math
from typing import Tuple

from ..exceptions import DegenerateBox, NonRectangle
from .types import (
    RECTANGLE_TOLERANCE,
    GraspAngled,
    GraspPose5D,
    GraspQuad,
    Point,
    normalize_angle,
)


def _axes(theta: float) -> Tuple[Point, Point]:
    """Unit closing axis and unit plate axis for an angle in degrees."""
    rad = math.radians(theta)
    c, s = math.cos(rad), math.sin(rad)
    return (c, s), (-s, c)


def pose_to_quad(p: GraspPose5D) -> GraspQuad:
    """Corners of a pose, ordered so v1->v2 is a plate edge and v2->v3 the opening."""
    (ux, uy), (vx, vy) = _axes(p.theta)
    hw, hh = p.w / 2.0, p.h / 2.0
    v1 = (p.x - hw * ux - hh * vx, p.y - hw * uy - hh * vy)
    v2 = (p.x - hw * ux + hh * vx, p.y - hw * uy + hh * vy)
    v3 = (p.x + hw * ux + hh * vx, p.y + hw * uy + hh * vy)
    v4 = (p.x + hw * ux - hh * vx, p.y + hw * uy - hh * vy)
    return GraspQuad((v1, v2, v3, v4))


def quad_to_pose(q: GraspQuad, tol: float = RECTANGLE_TOLERANCE) -> GraspPose5D:
    """
    Recover the pose of a rectangular quad.

    Args:
        q: Quad whose v1->v2 edge is a plate edge and v2->v3 edge the opening
        tol: Relative tolerance of the rectangle check

    Returns:
        Pose with centre at the vertex mean

    Raises:
        NonRectangle: If the vertices are not a rectangle within ``tol``
    """
    if not q.is_rectangle(tol):
        raise NonRectangle(
            "Grasp vertices do not form a rectangle",
            {"vertices": q.as_list(), "tolerance": tol},
        )
    (x1, y1), (x2, y2), (x3, y3), _ = q.vertices
    cx, cy = q.centroid
    theta = normalize_angle(math.degrees(math.atan2(y3 - y2, x3 - x2)))
    return GraspPose5D(
        x=cx,
        y=cy,
        theta=theta,
        h=math.hypot(x2 - x1, y2 - y1),
        w=math.hypot(x3 - x2, y3 - y2),
    )


def fit_pose(q: GraspQuad) -> GraspPose5D:
    """
    Pose for a quad that is only approximately rectangular.

    Averages the two plate edges for ``h``, the two opening edges for ``w``
    and the two opening directions for ``theta``. Exact rectangles give the
    same result as ``quad_to_pose``.
    """
    if not q.is_finite:
        raise NonRectangle("Grasp vertices are not finite", {"vertices": q.as_list()})
    (x1, y1), (x2, y2), (x3, y3), (x4, y4) = q.vertices
    h = (math.hypot(x2 - x1, y2 - y1) + math.hypot(x3 - x4, y3 - y4)) / 2.0
    w = (math.hypot(x3 - x2, y3 - y2) + math.hypot(x4 - x1, y4 - y1)) / 2.0
    if h <= 0 or w <= 0:
        raise NonRectangle("Grasp quad has zero extent", {"vertices": q.as_list()})
    dx = (x3 - x2) + (x4 - x1)
    dy = (y3 - y2) + (y4 - y1)
    cx, cy = q.centroid
    return GraspPose5D(
        x=cx,
        y=cy,
        theta=normalize_angle(math.degrees(math.atan2(dy, dx))),
        h=h,
        w=w,
    )


def pose_to_angled(p: GraspPose5D) -> GraspAngled:
    """De-rotate a pose into ``{theta, x_min, y_min, x_max, y_max}``."""
    return GraspAngled(
        theta=p.theta,
        x_min=p.x - p.w / 2.0,
        y_min=p.y - p.h / 2.0,
        x_max=p.x + p.w / 2.0,
        y_max=p.y + p.h / 2.0,
    )


def angled_to_pose(a: GraspAngled) -> GraspPose5D:
    """Inverse of ``pose_to_angled``."""
    w = a.x_max - a.x_min
    h = a.y_max - a.y_min
    if w <= 0 or h <= 0:
        raise DegenerateBox(f"Degenerate box {a.box}", {"box": list(a.box)})
    return GraspPose5D(
        x=(a.x_min + a.x_max) / 2.0,
        y=(a.y_min + a.y_max) / 2.0,
        theta=a.theta,
        h=h,
        w=w,
    )


def transform_point(
    point: Point, rotation: float, translation: Point, center: Point
) -> Point:
    """Rotate ``point`` by ``rotation`` degrees about ``center``, then translate."""
    rad = math.radians(rotation)
    c, s = math.cos(rad), math.sin(rad)
    px, py = point[0] - center[0], point[1] - center[1]
    return (
        c * px - s * py + center[0] + translation[0],
        s * px + c * py + center[1] + translation[1],
    )


def transform_pose(
    p: GraspPose5D, rotation: float, translation: Point, center: Point
) -> GraspPose5D:
    """Rigidly move a pose: centre transformed, angle advanced by ``rotation``."""
    x, y = transform_point(p.center, rotation, translation, center)
    return GraspPose5D(x=x, y=y, theta=normalize_angle(p.theta + rotation), h=p.h, w=p.w)


def transform_quad(
    q: GraspQuad, rotation: float, translation: Point, center: Point
) -> GraspQuad:
    """Rigidly move each vertex of a quad."""
    return GraspQuad(
        tuple(transform_point(v, rotation, translation, center) for v in q.vertices)
    )
