"""Error hierarchy for graspbench.

Every domain failure is a ``GraspBenchError``, which is a ``ValueError`` so
callers that only guard against bad values keep working.
"""

from typing import Any, Dict, Optional


class GraspBenchError(ValueError):
    """Base class for all graspbench errors."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable form used by the CLI and the API."""
        return {
            "error": type(self).__name__,
            "message": self.message,
            "details": self.details,
        }


# Geometry
class NonRectangle(GraspBenchError):
    """Four vertices do not form a rectangle within tolerance."""


class DegenerateBox(GraspBenchError):
    """Axis-aligned box with non-positive width or height."""


# Angle codec
class OutOfRange(GraspBenchError):
    """Angle outside [-90, 90), or a label outside its set."""


class BackgroundHasNoAngle(GraspBenchError):
    """Class 0 is background and has no angle."""


class NotADistribution(GraspBenchError):
    """Probability vector is negative, mis-sized or does not sum to one."""


# Dataset I/O
class ParseError(GraspBenchError):
    """Malformed annotation file."""


class MissingImage(GraspBenchError):
    """An annotated scene has no image on disk."""


class EmptyDataset(GraspBenchError):
    """No samples to work with."""


class MissingCategories(GraspBenchError):
    """Object-wise split requested on samples without category labels."""


class InvalidSample(GraspBenchError):
    """Sample violates a structural invariant."""


# Image pipeline
class ShapeMismatch(GraspBenchError):
    """Arrays that must share H x W do not."""


class BadRange(GraspBenchError):
    """Depth normalisation range is empty or inverted."""


class InsufficientSpec(GraspBenchError):
    """Augmentation cross product smaller than the target multiplier."""


# Proposals and losses
class DegenerateAnchor(GraspBenchError):
    """Anchor with zero width or height."""


class EmptyBatch(GraspBenchError):
    """Batch holds no scorable entries."""


class NonFinite(GraspBenchError):
    """A loss value is NaN or infinite."""


# Evaluation
class NoGroundTruth(GraspBenchError):
    """Ground-truth list is empty."""


class MissingPrediction(GraspBenchError):
    """Some samples have no prediction."""


class EmptyMask(GraspBenchError):
    """Mask is missing or has too few object pixels."""


class ConfigError(GraspBenchError):
    """Configuration file or flags cannot be resolved."""
