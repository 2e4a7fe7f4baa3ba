"""Assigning proposal targets to anchors by axis-aligned overlap."""

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..exceptions import NoGroundTruth
from ..geometry import GraspAngled
from .anchors import Anchor, Box, anchors_as_array
from .deltas import encode_deltas

POSITIVE = 1
NEGATIVE = 0
IGNORE = -1

POSITIVE_OVERLAP = 0.7
NEGATIVE_OVERLAP = 0.3


def box_iou_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise intersection over union of ``N x 4`` and ``M x 4`` box arrays."""
    a = np.asarray(a, dtype=np.float64).reshape(-1, 4)
    b = np.asarray(b, dtype=np.float64).reshape(-1, 4)
    x0 = np.maximum(a[:, None, 0], b[None, :, 0])
    y0 = np.maximum(a[:, None, 1], b[None, :, 1])
    x1 = np.minimum(a[:, None, 2], b[None, :, 2])
    y1 = np.minimum(a[:, None, 3], b[None, :, 3])
    inter = np.clip(x1 - x0, 0, None) * np.clip(y1 - y0, 0, None)
    area_a = (a[:, 2] - a[:, 0]) * (a[:, 3] - a[:, 1])
    area_b = (b[:, 2] - b[:, 0]) * (b[:, 3] - b[:, 1])
    union = area_a[:, None] + area_b[None, :] - inter
    return np.where(union > 0, inter / np.where(union > 0, union, 1.0), 0.0)


@dataclass
class MatchResult:
    """Per-anchor targets: labels in {1, 0, -1} and deltas for the positives."""

    labels: np.ndarray
    target_deltas: np.ndarray
    matched_gt: np.ndarray
    max_overlap: np.ndarray

    @property
    def n_positive(self) -> int:
        return int(np.sum(self.labels == POSITIVE))

    @property
    def n_negative(self) -> int:
        return int(np.sum(self.labels == NEGATIVE))


def _gt_box(gt: Union[GraspAngled, Box]) -> Box:
    return gt.box if isinstance(gt, GraspAngled) else tuple(float(v) for v in gt)


def match_proposals(
    anchors: Sequence[Anchor],
    gt_boxes: Sequence[Union[GraspAngled, Box]],
    positive_overlap: float = POSITIVE_OVERLAP,
    negative_overlap: float = NEGATIVE_OVERLAP,
) -> MatchResult:
    """
    Label anchors against ground-truth boxes.

    An anchor is positive when its overlap with some box reaches
    ``positive_overlap`` or it is the best anchor of some box; negative when
    its best overlap is at most ``negative_overlap``; ignored otherwise.
    Positives get the deltas of their best-overlapping box.

    Args:
        anchors: Anchors to label
        gt_boxes: Horizontal boxes, e.g. from ``pose_to_angled``

    Raises:
        NoGroundTruth: If ``gt_boxes`` is empty
    """
    if len(gt_boxes) == 0:
        raise NoGroundTruth("Cannot match proposals without ground-truth boxes")
    boxes = [_gt_box(g) for g in gt_boxes]
    overlaps = box_iou_matrix(anchors_as_array(anchors), np.array(boxes))
    n = overlaps.shape[0]

    matched = np.argmax(overlaps, axis=1) if n else np.zeros(0, dtype=int)
    max_overlap = overlaps[np.arange(n), matched] if n else np.zeros(0)

    labels = np.full(n, IGNORE, dtype=np.int64)
    labels[max_overlap <= negative_overlap] = NEGATIVE
    labels[max_overlap >= positive_overlap] = POSITIVE

    if n:
        # every box keeps at least one anchor, ties included
        best_per_gt = overlaps.max(axis=0)
        for j, best in enumerate(best_per_gt):
            if best <= 0:
                continue
            winners = np.flatnonzero(overlaps[:, j] == best)
            labels[winners] = POSITIVE
            matched[winners] = np.where(max_overlap[winners] > best, matched[winners], j)

    target_deltas = np.zeros((n, 4))
    for i in np.flatnonzero(labels == POSITIVE):
        target_deltas[i] = encode_deltas(anchors[i], boxes[matched[i]])

    return MatchResult(
        labels=labels,
        target_deltas=target_deltas,
        matched_gt=matched.astype(np.int64),
        max_overlap=max_overlap,
    )
