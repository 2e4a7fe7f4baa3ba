"""Grasp representations.

Coordinates are image pixels with x to the right and y downward. Angles are
degrees; ``theta`` is the direction of the gripper closing axis measured from
the horizontal image axis, kept in the half-open range [-90, 90).
"""

import math
from dataclasses import dataclass
from typing import Iterator, Tuple

from ..exceptions import DegenerateBox, InvalidSample, OutOfRange

Point = Tuple[float, float]

# Tolerance for rectangle checks on quads
RECTANGLE_TOLERANCE = 1e-6


def normalize_angle(theta: float) -> float:
    """Map any finite angle in degrees onto [-90, 90) using 180-degree periodicity."""
    if not math.isfinite(theta):
        raise OutOfRange(f"Angle must be finite, got {theta}", {"theta": repr(theta)})
    wrapped = math.fmod(theta + 90.0, 180.0)
    if wrapped < 0:
        wrapped += 180.0
    result = wrapped - 90.0
    # fmod can round up to exactly +90 for tiny negative inputs
    if result >= 90.0:
        result -= 180.0
    return result


@dataclass(frozen=True)
class GraspPose5D:
    """Five-dimensional grasp {x, y, theta, h, w}.

    ``w`` is the gripper opening (along the closing axis) and ``h`` the plate
    size (across it).
    """

    x: float
    y: float
    theta: float
    h: float
    w: float

    def __post_init__(self) -> None:
        """Validate pose invariants after initialisation."""
        values = (self.x, self.y, self.theta, self.h, self.w)
        if not all(math.isfinite(v) for v in values):
            raise InvalidSample(f"Grasp pose has non-finite fields: {values}")
        if not -90.0 <= self.theta < 90.0:
            raise OutOfRange(
                f"theta must be in [-90, 90), got {self.theta}",
                {"theta": self.theta},
            )
        if self.h <= 0 or self.w <= 0:
            raise InvalidSample(
                f"Grasp size must be positive, got h={self.h}, w={self.w}",
                {"h": self.h, "w": self.w},
            )

    @classmethod
    def from_unnormalized(
        cls, x: float, y: float, theta: float, h: float, w: float
    ) -> "GraspPose5D":
        """Build a pose from an arbitrary angle, normalising it first."""
        return cls(x=x, y=y, theta=normalize_angle(theta), h=h, w=w)

    @property
    def center(self) -> Point:
        return (self.x, self.y)

    @property
    def area(self) -> float:
        return self.h * self.w

    def as_list(self) -> list[float]:
        """Pose as ``[x, y, theta, h, w]``."""
        return [self.x, self.y, self.theta, self.h, self.w]


@dataclass(frozen=True)
class GraspQuad:
    """Grasp rectangle as four ordered vertices.

    Edge v1->v2 is a plate edge (length h); edge v2->v3 spans the opening
    (length w). Construction only checks shape and finiteness; the rectangle
    invariant is checked by ``is_rectangle`` and by ``quad_to_pose``.
    """

    vertices: Tuple[Point, Point, Point, Point]

    def __post_init__(self) -> None:
        """Coerce vertices to float tuples and check their count."""
        if len(self.vertices) != 4:
            raise InvalidSample(
                f"A grasp quad needs exactly 4 vertices, got {len(self.vertices)}"
            )
        coerced = tuple((float(px), float(py)) for px, py in self.vertices)
        object.__setattr__(self, "vertices", coerced)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.vertices)

    @property
    def is_finite(self) -> bool:
        return all(math.isfinite(c) for vertex in self.vertices for c in vertex)

    @property
    def centroid(self) -> Point:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return (sum(xs) / 4.0, sum(ys) / 4.0)

    def edges(self) -> list[Point]:
        """Edge vectors v1->v2, v2->v3, v3->v4, v4->v1."""
        out = []
        for i in range(4):
            (x0, y0), (x1, y1) = self.vertices[i], self.vertices[(i + 1) % 4]
            out.append((x1 - x0, y1 - y0))
        return out

    def is_rectangle(self, tol: float = RECTANGLE_TOLERANCE) -> bool:
        """Opposite edges equal and adjacent edges orthogonal, within ``tol``."""
        if not self.is_finite:
            return False
        edges = self.edges()
        lengths = [math.hypot(ex, ey) for ex, ey in edges]
        if min(lengths) <= 0:
            return False
        for a, b in ((0, 2), (1, 3)):
            if abs(lengths[a] - lengths[b]) > tol * max(lengths[a], lengths[b]):
                return False
        for i in range(4):
            (ax, ay), (bx, by) = edges[i], edges[(i + 1) % 4]
            cos_angle = (ax * bx + ay * by) / (lengths[i] * lengths[(i + 1) % 4])
            if abs(cos_angle) > tol:
                return False
        return True

    def as_list(self) -> list[list[float]]:
        return [[x, y] for x, y in self.vertices]


@dataclass(frozen=True)
class GraspAngled:
    """Angle plus the de-rotated axis-aligned box ``{theta, x_min, y_min, x_max, y_max}``."""

    theta: float
    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def __post_init__(self) -> None:
        """Validate box ordering."""
        if not self.x_min < self.x_max or not self.y_min < self.y_max:
            raise DegenerateBox(
                "Box must satisfy x_min < x_max and y_min < y_max, got "
                f"({self.x_min}, {self.y_min}, {self.x_max}, {self.y_max})",
                {"box": [self.x_min, self.y_min, self.x_max, self.y_max]},
            )
        if not -90.0 <= self.theta < 90.0:
            raise OutOfRange(f"theta must be in [-90, 90), got {self.theta}")

    @property
    def box(self) -> Tuple[float, float, float, float]:
        return (self.x_min, self.y_min, self.x_max, self.y_max)
