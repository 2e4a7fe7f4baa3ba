"""Proposal and grasp-configuration batches, their JSON records and random generators."""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from pydantic import BaseModel

from ..exceptions import NonFinite, OutOfRange, ShapeMismatch
from ..geometry import NUM_CLASSES
from .matching import IGNORE, POSITIVE, MatchResult

# random regression residuals stay this far from the L1 and smooth-L1 kinks
_RESIDUAL_RANGE = (0.05, 0.9)


def _as_array(name: str, values, shape: tuple) -> np.ndarray:
    array = np.asarray(values, dtype=np.float64)
    if array.size == 0 and 0 in shape:
        return array.reshape(shape)
    if array.shape != shape:
        raise ShapeMismatch(
            f"{name} must have shape {shape}, got {array.shape}",
            {"field": name, "expected": list(shape), "actual": list(array.shape)},
        )
    return array


@dataclass
class ProposalBatch:
    """
    Grasp-proposal predictions and targets.

    ``logits`` are (not graspable, graspable) pairs, ``labels`` take 1
    (graspable), 0 (not graspable) or -1 (ignored).
    """

    logits: np.ndarray
    deltas: np.ndarray
    labels: np.ndarray
    target_deltas: np.ndarray

    def __post_init__(self) -> None:
        """Coerce arrays and validate shapes and labels."""
        self.labels = np.asarray(self.labels, dtype=np.int64).reshape(-1)
        n = self.labels.shape[0]
        self.logits = _as_array("logits", self.logits, (n, 2))
        self.deltas = _as_array("deltas", self.deltas, (n, 4))
        self.target_deltas = _as_array("target_deltas", self.target_deltas, (n, 4))
        if not np.all(np.isin(self.labels, (0, 1, IGNORE))):
            raise OutOfRange("Proposal labels must be 0, 1 or -1", {"labels": sorted(set(self.labels.tolist()))})
        if not np.all(np.isfinite(self.target_deltas[self.labels == POSITIVE])):
            raise NonFinite("Positive proposals need finite target deltas")

    @property
    def n(self) -> int:
        return int(self.labels.shape[0])

    @classmethod
    def from_match(
        cls, logits: np.ndarray, deltas: np.ndarray, match: MatchResult
    ) -> "ProposalBatch":
        """Attach predictions to the targets of ``match_proposals``."""
        return cls(logits, deltas, match.labels, match.target_deltas)

    def with_predictions(self, logits: np.ndarray, deltas: np.ndarray) -> "ProposalBatch":
        return ProposalBatch(logits, deltas, self.labels, self.target_deltas)

    def to_record(self) -> "ProposalBatchRecord":
        return ProposalBatchRecord(
            logits=self.logits.tolist(),
            deltas=self.deltas.tolist(),
            labels=self.labels.tolist(),
            target_deltas=self.target_deltas.tolist(),
        )

    @classmethod
    def from_record(cls, record: "ProposalBatchRecord") -> "ProposalBatch":
        return cls(
            np.array(record.logits, dtype=np.float64).reshape(-1, 2),
            np.array(record.deltas, dtype=np.float64).reshape(-1, 4),
            np.array(record.labels, dtype=np.int64),
            np.array(record.target_deltas, dtype=np.float64).reshape(-1, 4),
        )


@dataclass
class GraspConfigBatch:
    """
    Per-ROI angle-class predictions and targets.

    ``angle_logits`` are M x C with class 0 background, ``offsets`` hold one
    4-vector per class, ``target_class`` is in [0, C).
    """

    angle_logits: np.ndarray
    offsets: np.ndarray
    target_class: np.ndarray
    target_offsets: np.ndarray

    def __post_init__(self) -> None:
        """Coerce arrays and validate shapes and classes."""
        self.target_class = np.asarray(self.target_class, dtype=np.int64).reshape(-1)
        m = self.target_class.shape[0]
        self.angle_logits = _as_array("angle_logits", self.angle_logits, (m, NUM_CLASSES))
        self.offsets = _as_array("offsets", self.offsets, (m, NUM_CLASSES, 4))
        self.target_offsets = _as_array("target_offsets", self.target_offsets, (m, 4))
        if np.any((self.target_class < 0) | (self.target_class >= NUM_CLASSES)):
            raise OutOfRange(f"Target classes must be in [0, {NUM_CLASSES})")

    @property
    def n(self) -> int:
        return int(self.target_class.shape[0])

    def with_predictions(self, angle_logits: np.ndarray, offsets: np.ndarray) -> "GraspConfigBatch":
        return GraspConfigBatch(angle_logits, offsets, self.target_class, self.target_offsets)

    def to_record(self) -> "GraspConfigBatchRecord":
        return GraspConfigBatchRecord(
            angle_logits=self.angle_logits.tolist(),
            offsets=self.offsets.tolist(),
            target_class=self.target_class.tolist(),
            target_offsets=self.target_offsets.tolist(),
        )

    @classmethod
    def from_record(cls, record: "GraspConfigBatchRecord") -> "GraspConfigBatch":
        return cls(
            np.array(record.angle_logits, dtype=np.float64),
            np.array(record.offsets, dtype=np.float64),
            np.array(record.target_class, dtype=np.int64),
            np.array(record.target_offsets, dtype=np.float64),
        )


class ProposalBatchRecord(BaseModel):
    """JSON form of a ``ProposalBatch``."""

    logits: List[List[float]]
    deltas: List[List[float]]
    labels: List[int]
    target_deltas: List[List[float]]


class GraspConfigBatchRecord(BaseModel):
    """JSON form of a ``GraspConfigBatch``."""

    angle_logits: List[List[float]]
    offsets: List[List[List[float]]]
    target_class: List[int]
    target_offsets: List[List[float]]


class LossFixture(BaseModel):
    """A pair of batches stored together as a test fixture."""

    proposals: Optional[ProposalBatchRecord] = None
    configs: Optional[GraspConfigBatchRecord] = None


def _residuals(rng: np.random.Generator, shape: tuple) -> np.ndarray:
    magnitude = rng.uniform(*_RESIDUAL_RANGE, size=shape)
    return magnitude * rng.choice((-1.0, 1.0), size=shape)


def random_proposal_batch(rng: np.random.Generator, n: int) -> ProposalBatch:
    """Random batch with at least one scored proposal and residuals away from kinks."""
    labels = rng.choice((0, 1, IGNORE), size=n)
    labels[0] = POSITIVE
    target_deltas = rng.normal(size=(n, 4))
    return ProposalBatch(
        logits=rng.normal(scale=2.0, size=(n, 2)),
        deltas=target_deltas + _residuals(rng, (n, 4)),
        labels=labels,
        target_deltas=target_deltas,
    )


def random_config_batch(rng: np.random.Generator, m: int) -> GraspConfigBatch:
    """Random configuration batch mixing background and angle targets."""
    target_class = rng.integers(0, NUM_CLASSES, size=m)
    target_class[0] = int(rng.integers(1, NUM_CLASSES))
    target_offsets = rng.normal(size=(m, 4))
    offsets = rng.normal(size=(m, NUM_CLASSES, 4))
    rows = np.arange(m)
    offsets[rows, target_class] = target_offsets + _residuals(rng, (m, 4))
    return GraspConfigBatch(
        angle_logits=rng.normal(scale=2.0, size=(m, NUM_CLASSES)),
        offsets=offsets,
        target_class=target_class,
        target_offsets=target_offsets,
    )
