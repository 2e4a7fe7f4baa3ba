"""The rectangle metric and dataset-level accuracy."""

import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import List, Mapping, NamedTuple, Optional, Sequence, Union

from ..config.settings import Settings
from ..data.sample import Sample, SplitSpec
from ..exceptions import EmptyDataset, MissingPrediction, NoGroundTruth
from ..geometry import GraspPose5D, jaccard
from ..geometry.overlap import JaccardMode
from .report import EvalMetadata, EvalReport, SampleResult

logger = logging.getLogger(__name__)

Prediction = Union[GraspPose5D, Sequence[GraspPose5D]]


@dataclass(frozen=True)
class MetricConfig:
    """Thresholds of the rectangle metric."""

    angle_threshold: float = 30.0
    angle_inclusive: bool = True
    jaccard_threshold: float = 0.25
    jaccard_mode: JaccardMode = "rotated"

    @classmethod
    def from_settings(cls, settings: Settings) -> "MetricConfig":
        return cls(
            angle_threshold=settings.angle_threshold,
            angle_inclusive=settings.angle_inclusive,
            jaccard_threshold=settings.jaccard_threshold,
            jaccard_mode=settings.jaccard_mode,
        )

    def angle_ok(self, diff: float) -> bool:
        if self.angle_inclusive:
            return diff <= self.angle_threshold
        return diff < self.angle_threshold

    def jaccard_ok(self, value: float) -> bool:
        return value > self.jaccard_threshold


class Correctness(NamedTuple):
    correct: bool
    gt_index: int
    angle_diff: float
    jaccard: float


def angle_difference(a: float, b: float) -> float:
    """Smallest absolute difference of two grasp angles, modulo 180 degrees."""
    diff = abs(a - b) % 180.0
    return min(diff, 180.0 - diff)


def is_correct(
    pred: GraspPose5D, gts: Sequence[GraspPose5D], config: MetricConfig = MetricConfig()
) -> Correctness:
    """
    Score one prediction against every ground-truth grasp of a scene.

    The prediction is correct when some ground truth is within the angle
    threshold and overlaps it by more than the Jaccard threshold. The reported
    ground truth is the best-overlapping qualifying one, or the
    best-overlapping overall when none qualify.

    Raises:
        NoGroundTruth: If ``gts`` is empty
    """
    if not gts:
        raise NoGroundTruth("Cannot score a prediction without ground truth")
    scored = [
        (angle_difference(pred.theta, gt.theta), jaccard(pred, gt, config.jaccard_mode))
        for gt in gts
    ]
    qualifying = [
        i for i, (diff, jac) in enumerate(scored) if config.angle_ok(diff) and config.jaccard_ok(jac)
    ]
    candidates = qualifying or range(len(gts))
    best = max(candidates, key=lambda i: (scored[i][1], -i))
    diff, jac = scored[best]
    return Correctness(bool(qualifying), best, diff, jac)


def _as_list(prediction: Prediction) -> List[GraspPose5D]:
    if isinstance(prediction, GraspPose5D):
        return [prediction]
    return list(prediction)


def evaluate(
    predictions: Mapping[str, Prediction],
    samples: Sequence[Sample],
    split: Optional[SplitSpec] = None,
    config: MetricConfig = MetricConfig(),
    top_k: int = 1,
    tol: Optional[float] = None,
) -> EvalReport:
    """
    Accuracy of ``predictions`` over ``samples``.

    Each sample is scored on its first ``top_k`` predicted grasps and counts
    as correct when any of them is. Samples without ground truth are skipped
    and listed in the report.

    Args:
        predictions: Sample id to a pose, or to a ranked list of poses
        samples: Scenes to score
        split: Split the samples come from, recorded in the report
        config: Metric thresholds
        top_k: Number of ranked predictions scored per sample

    Raises:
        MissingPrediction: If a sample has no prediction
        EmptyDataset: If no sample has ground truth
    """
    ordered = sorted(samples, key=lambda s: s.id)
    missing = [s.id for s in ordered if s.grasps_pos and not _as_list(predictions.get(s.id, []))]
    if missing:
        raise MissingPrediction(
            f"{len(missing)} samples have no prediction", {"ids": missing}
        )

    results, skipped = [], []
    for sample in ordered:
        if not sample.grasps_pos:
            skipped.append(sample.id)
            continue
        gts = sample.poses() if tol is None else sample.poses(tol)
        ranked = _as_list(predictions[sample.id])[:top_k]
        outcomes = [(pose, is_correct(pose, gts, config)) for pose in ranked]
        pose, outcome = next(((p, o) for p, o in outcomes if o.correct), outcomes[0])
        results.append(
            SampleResult(
                id=sample.id,
                predicted=pose.as_list(),
                matched_gt=outcome.gt_index,
                angle_diff=outcome.angle_diff,
                jaccard=outcome.jaccard,
                correct=outcome.correct,
            )
        )

    if not results:
        raise EmptyDataset("No sample with ground truth to evaluate", {"skipped": skipped})
    if skipped:
        logger.warning("Skipped %d samples without ground truth", len(skipped))

    n_correct = sum(r.correct for r in results)
    return EvalReport(
        split_mode=split.mode if split is not None else None,
        per_sample=results,
        n_correct=n_correct,
        n_total=len(results),
        accuracy=n_correct / len(results),
        skipped=skipped,
        metadata=EvalMetadata(
            jaccard_mode=config.jaccard_mode,
            angle_threshold=config.angle_threshold,
            angle_inclusive=config.angle_inclusive,
            jaccard_threshold=config.jaccard_threshold,
            top_k=top_k,
            created_at=datetime.now(timezone.utc).isoformat(),
        ),
    )
