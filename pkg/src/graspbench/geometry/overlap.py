"""Rotated-rectangle overlap and the Jaccard index."""

from typing import List, Literal, Optional, Sequence

from ..exceptions import ConfigError
from .conversions import pose_to_quad
from .types import GraspPose5D, GraspQuad, Point

Polygon = List[Point]
JaccardMode = Literal["rotated", "axis_aligned"]


def signed_area(polygon: Sequence[Point]) -> float:
    """Shoelace signed area; positive for counter-clockwise in x-right/y-up axes."""
    total = 0.0
    n = len(polygon)
    for i in range(n):
        x1, y1 = polygon[i]
        x2, y2 = polygon[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total / 2.0


def polygon_area(polygon: Sequence[Point]) -> float:
    return abs(signed_area(polygon))


def quad_area(q: GraspQuad) -> float:
    return polygon_area(q.vertices)


def _oriented(polygon: Sequence[Point]) -> Polygon:
    """Vertices with positive signed area."""
    pts = list(polygon)
    return pts if signed_area(pts) >= 0 else pts[::-1]


def _is_inside(p: Point, edge_start: Point, edge_end: Point) -> bool:
    (x0, y0), (x1, y1), (x2, y2) = p, edge_start, edge_end
    return (x2 - x1) * (y0 - y1) - (y2 - y1) * (x0 - x1) >= 0


def _intersection(s: Point, e: Point, cp1: Point, cp2: Point) -> Optional[Point]:
    """Intersection of line (s, e) with line (cp1, cp2)."""
    x1, y1 = s
    x2, y2 = e
    x3, y3 = cp1
    x4, y4 = cp2
    denom = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
    if denom == 0:
        return None
    a = x1 * y2 - y1 * x2
    b = x3 * y4 - y3 * x4
    return (
        (a * (x3 - x4) - (x1 - x2) * b) / denom,
        (a * (y3 - y4) - (y1 - y2) * b) / denom,
    )


def clip_convex(subject: Sequence[Point], clip: Sequence[Point]) -> Polygon:
    """
    Clip ``subject`` against every half-plane of the convex polygon ``clip``.

    Both polygons are re-oriented first, so vertex order may be either
    direction. Returns an empty list when the polygons do not overlap.
    """
    output = _oriented(subject)
    clip_pts = _oriented(clip)
    cp1 = clip_pts[-1]
    for cp2 in clip_pts:
        if not output:
            break
        candidates, output = output, []
        s = candidates[-1]
        for e in candidates:
            if _is_inside(e, cp1, cp2):
                if not _is_inside(s, cp1, cp2):
                    crossing = _intersection(s, e, cp1, cp2)
                    if crossing is not None:
                        output.append(crossing)
                output.append(e)
            elif _is_inside(s, cp1, cp2):
                crossing = _intersection(s, e, cp1, cp2)
                if crossing is not None:
                    output.append(crossing)
            s = e
        cp1 = cp2
    return output


def convex_intersection_area(a: GraspQuad, b: GraspQuad) -> float:
    """Area of ``a`` intersected with ``b``; 0 when disjoint or degenerate."""
    clipped = clip_convex(a.vertices, b.vertices)
    if len(clipped) < 3:
        return 0.0
    area = polygon_area(clipped)
    # clipping can overshoot by rounding; the overlap never exceeds either input
    return min(area, quad_area(a), quad_area(b))


def _bounding_quad(q: GraspQuad) -> GraspQuad:
    xs = [v[0] for v in q.vertices]
    ys = [v[1] for v in q.vertices]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    return GraspQuad(((x0, y0), (x0, y1), (x1, y1), (x1, y0)))


def jaccard_quads(a: GraspQuad, b: GraspQuad, mode: JaccardMode = "rotated") -> float:
    """Intersection over union of two rectangles given as quads."""
    if mode == "axis_aligned":
        a, b = _bounding_quad(a), _bounding_quad(b)
    elif mode != "rotated":
        raise ConfigError(f"Unknown jaccard mode: {mode}", {"mode": mode})
    inter = convex_intersection_area(a, b)
    union = quad_area(a) + quad_area(b) - inter
    if union <= 0:
        return 0.0
    return min(1.0, max(0.0, inter / union))


def jaccard(
    g_p: GraspPose5D, g_t: GraspPose5D, mode: JaccardMode = "rotated"
) -> float:
    """
    Jaccard index of a predicted and a ground-truth grasp.

    Args:
        g_p: Predicted grasp
        g_t: Ground-truth grasp
        mode: "rotated" for true polygon overlap, "axis_aligned" to compare
            the bounding boxes of the two rectangles instead

    Returns:
        Ratio in [0, 1]
    """
    return jaccard_quads(pose_to_quad(g_p), pose_to_quad(g_t), mode)
