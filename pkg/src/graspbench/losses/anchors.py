"""Anchor boxes on a regular grid: three scales times three aspect ratios per cell."""

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..utils.validators import ParameterValidator

Box = Tuple[float, float, float, float]
Grid = Tuple[int, int, float]


@dataclass(frozen=True)
class Anchor:
    """An axis-aligned anchor centred on a grid cell."""

    cx: float
    cy: float
    scale: float
    aspect: float

    def __post_init__(self) -> None:
        """Validate anchor size."""
        ParameterValidator.validate_positive(self.scale, "scale")
        ParameterValidator.validate_positive(self.aspect, "aspect")

    @property
    def width(self) -> float:
        return self.scale * math.sqrt(self.aspect)

    @property
    def height(self) -> float:
        return self.scale / math.sqrt(self.aspect)

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def box(self) -> Box:
        """``(x_min, y_min, x_max, y_max)``."""
        half_w, half_h = self.width / 2.0, self.height / 2.0
        return (self.cx - half_w, self.cy - half_h, self.cx + half_w, self.cy + half_h)


def generate_anchors(
    grid: Grid,
    scales: Sequence[float] = (32.0, 64.0, 128.0),
    aspects: Sequence[float] = (0.5, 1.0, 2.0),
) -> List[Anchor]:
    """
    Anchors for every cell of a ``rows x cols`` grid.

    Cell ``(row, col)`` is centred at ``((col + 0.5) * stride, (row + 0.5) * stride)``.
    Order is row-major over cells, then scales, then aspects.

    Args:
        grid: ``(rows, cols, stride)``
        scales: Anchor side for aspect 1, in pixels
        aspects: Width over height ratios

    Returns:
        ``rows * cols * len(scales) * len(aspects)`` anchors
    """
    rows, cols, stride = grid
    ParameterValidator.validate_positive(rows, "rows")
    ParameterValidator.validate_positive(cols, "cols")
    ParameterValidator.validate_positive(stride, "stride")

    anchors = []
    for row in range(int(rows)):
        for col in range(int(cols)):
            cx, cy = (col + 0.5) * stride, (row + 0.5) * stride
            for scale in scales:
                for aspect in aspects:
                    anchors.append(Anchor(cx, cy, float(scale), float(aspect)))
    return anchors


def anchors_as_array(anchors: Sequence[Anchor]) -> np.ndarray:
    """Stack anchors into an ``N x 4`` array of boxes."""
    if not anchors:
        return np.zeros((0, 4))
    return np.array([a.box for a in anchors], dtype=np.float64)
