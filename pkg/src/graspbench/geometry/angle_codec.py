"""Angle quantisation into R=19 bins plus a background class."""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from ..exceptions import BackgroundHasNoAngle, NotADistribution, OutOfRange

NUM_ANGLE_BINS = 19
NUM_CLASSES = NUM_ANGLE_BINS + 1
BACKGROUND_CLASS = 0
BIN_WIDTH = 180.0 / NUM_ANGLE_BINS
DISTRIBUTION_TOLERANCE = 1e-6


@dataclass(frozen=True)
class AngleClass:
    """Class index in [0, C); 0 is background, 1..R are angle bins."""

    index: int

    def __post_init__(self) -> None:
        """Validate the class index."""
        if not 0 <= self.index < NUM_CLASSES:
            raise OutOfRange(
                f"Angle class must be in [0, {NUM_CLASSES}), got {self.index}",
                {"index": self.index},
            )

    @property
    def is_background(self) -> bool:
        return self.index == BACKGROUND_CLASS


def angle_to_class(theta: float) -> AngleClass:
    """
    Bin a normalised angle.

    Bins are half-open and uniform, ``180/19`` degrees wide, starting at -90.

    Raises:
        OutOfRange: If ``theta`` is outside [-90, 90)
    """
    if not -90.0 <= theta < 90.0:
        raise OutOfRange(f"theta must be in [-90, 90), got {theta}", {"theta": theta})
    offset = math.floor((theta + 90.0) * NUM_ANGLE_BINS / 180.0)
    return AngleClass(min(max(1 + offset, 1), NUM_ANGLE_BINS))


def class_to_angle(c: AngleClass) -> float:
    """Centre of an angle bin, in degrees."""
    if c.is_background:
        raise BackgroundHasNoAngle("Class 0 is background and has no angle")
    return -90.0 + (c.index - 0.5) * 180.0 / NUM_ANGLE_BINS


def is_credible(class_probs: Sequence[float]) -> Tuple[bool, Optional[AngleClass]]:
    """
    Apply the credibility rule to a class distribution.

    An angle suggestion is credible only when its best angle class is strictly
    more probable than background.

    Args:
        class_probs: Probabilities over the C classes, background first

    Returns:
        ``(credible, best angle class)``; the class is None when not credible

    Raises:
        NotADistribution: On wrong length, negative entries or a sum off one
    """
    probs = np.asarray(class_probs, dtype=float)
    if probs.shape != (NUM_CLASSES,):
        raise NotADistribution(
            f"Expected {NUM_CLASSES} class probabilities, got shape {probs.shape}"
        )
    if not np.all(np.isfinite(probs)) or np.any(probs < 0):
        raise NotADistribution("Class probabilities must be finite and non-negative")
    total = float(probs.sum())
    if abs(total - 1.0) > DISTRIBUTION_TOLERANCE:
        raise NotADistribution(
            f"Class probabilities must sum to 1, got {total}", {"sum": total}
        )
    best = int(np.argmax(probs[1:])) + 1
    if probs[best] > probs[BACKGROUND_CLASS]:
        return True, AngleClass(best)
    return False, None
