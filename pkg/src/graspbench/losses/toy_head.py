"""A linear prediction head trained by full-batch gradient descent on the total loss."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import ConfigError, NonFinite, ShapeMismatch
from ..geometry import BACKGROUND_CLASS, NUM_CLASSES, angle_to_class
from ..utils.validators import ParameterValidator
from .anchors import Grid, generate_anchors
from .batches import GraspConfigBatch, ProposalBatch
from .losses import L1Variant, loss_gpn, loss_gr, loss_total
from .matching import POSITIVE, match_proposals

logger = logging.getLogger(__name__)

DIVERGENCE_FACTOR = 10.0
MONOTONE_TOLERANCE = 1e-12
CLASSIFICATION_TARGET = 1e-2


@dataclass
class ToyHead:
    """Linear maps from features to proposal and configuration outputs."""

    w_cls: np.ndarray
    w_box: np.ndarray
    w_angle: np.ndarray
    w_offset: np.ndarray

    @classmethod
    def zeros(cls, n_features: int) -> "ToyHead":
        return cls(
            w_cls=np.zeros((n_features, 2)),
            w_box=np.zeros((n_features, 4)),
            w_angle=np.zeros((n_features, NUM_CLASSES)),
            w_offset=np.zeros((n_features, NUM_CLASSES * 4)),
        )


@dataclass
class FitResult:
    """Loss trajectory of a fit; entry ``k`` is the loss after ``k`` steps."""

    trajectory: List[float]
    classification: List[float]
    learning_rate: float
    diverged: bool = False
    head: Optional[ToyHead] = field(default=None, repr=False)

    @property
    def final_loss(self) -> float:
        return self.trajectory[-1]

    @property
    def final_classification(self) -> float:
        return self.classification[-1]

    def is_non_increasing(self, tolerance: float = MONOTONE_TOLERANCE) -> bool:
        """Whether no step raised the loss by more than ``tolerance * max(1, initial)``."""
        slack = tolerance * max(1.0, abs(self.trajectory[0]))
        return all(b <= a + slack for a, b in zip(self.trajectory, self.trajectory[1:]))

    def converged(self, target: float = CLASSIFICATION_TARGET) -> bool:
        """Whether the fit finished without diverging below ``target`` classification loss."""
        return not self.diverged and self.final_classification < target

    def to_dict(self) -> Dict[str, object]:
        return {
            "learning_rate": self.learning_rate,
            "steps": len(self.trajectory) - 1,
            "diverged": self.diverged,
            "final_loss": self.final_loss,
            "final_classification": self.final_classification,
            "trajectory": list(self.trajectory),
        }


def _evaluate(
    head: ToyHead,
    features: np.ndarray,
    proposals: ProposalBatch,
    configs: Optional[GraspConfigBatch],
    lam: float,
    lam2: float,
    variant: L1Variant,
    normalize_cls: bool,
):
    gpn = loss_gpn(
        proposals.with_predictions(features @ head.w_cls, features @ head.w_box),
        lam, variant, normalize_cls,
    )
    grads = {
        "w_cls": features.T @ gpn.gradients["logits"],
        "w_box": features.T @ gpn.gradients["deltas"],
    }
    gr_value, gr_cls = 0.0, 0.0
    if configs is not None:
        offsets = (features @ head.w_offset).reshape(-1, NUM_CLASSES, 4)
        gr = loss_gr(
            configs.with_predictions(features @ head.w_angle, offsets),
            lam2, variant, normalize_cls,
        )
        gr_value, gr_cls = gr.value, gr.components["classification"]
        grads["w_angle"] = features.T @ gr.gradients["angle_logits"]
        grads["w_offset"] = features.T @ gr.gradients["offsets"].reshape(len(features), -1)
    value = loss_total(gpn.value, gr_value)
    return value, gpn.components["classification"] + gr_cls, grads


def fit_toy_head(
    features: np.ndarray,
    proposals: ProposalBatch,
    configs: Optional[GraspConfigBatch] = None,
    steps: int = 100,
    learning_rate: float = 0.1,
    lam: float = 1.0,
    lam2: float = 1.0,
    variant: L1Variant = "l1",
    normalize_cls: bool = False,
) -> FitResult:
    """
    Fit a zero-initialised linear head to matched targets.

    Row ``i`` of ``features`` produces proposal ``i`` and, when ``configs`` is
    given, ROI ``i``. The fit stops early once the loss exceeds ten times its
    initial value; that run is flagged as diverged.

    Args:
        features: N x D feature matrix
        proposals: Targets for the proposal outputs (its predictions are ignored)
        configs: Optional targets for the angle-class outputs
        steps: Gradient-descent steps
        learning_rate: Step size, 0 keeps the head fixed

    Raises:
        NonFinite: If the features are not finite
        ShapeMismatch: If batch sizes differ from the number of feature rows
    """
    features = np.asarray(features, dtype=np.float64)
    if features.ndim != 2:
        raise ShapeMismatch(f"Features must be N x D, got shape {features.shape}")
    if not np.all(np.isfinite(features)):
        raise NonFinite("Features must be finite")
    n = features.shape[0]
    if proposals.n != n or (configs is not None and configs.n != n):
        raise ShapeMismatch(
            "Batches must have one entry per feature row",
            {"features": n, "proposals": proposals.n, "configs": None if configs is None else configs.n},
        )
    ParameterValidator.validate_non_negative(learning_rate, "learning_rate")
    ParameterValidator.validate_non_negative(steps, "steps")

    head = ToyHead.zeros(features.shape[1])
    value, cls_value, grads = _evaluate(head, features, proposals, configs, lam, lam2, variant, normalize_cls)
    trajectory, classification = [value], [cls_value]
    diverged = False
    for step in range(steps):
        for name, grad in grads.items():
            setattr(head, name, getattr(head, name) - learning_rate * grad)
        value, cls_value, grads = _evaluate(
            head, features, proposals, configs, lam, lam2, variant, normalize_cls
        )
        trajectory.append(value)
        classification.append(cls_value)
        if value > DIVERGENCE_FACTOR * trajectory[0]:
            diverged = True
            logger.warning(
                "Toy head diverged at step %d (loss %.4g, initial %.4g, lr %g)",
                step + 1, value, trajectory[0], learning_rate,
            )
            break

    return FitResult(trajectory, classification, learning_rate, diverged, head)


def auto_learning_rate(
    features: np.ndarray,
    proposals: ProposalBatch,
    configs: Optional[GraspConfigBatch] = None,
    steps: int = 100,
    start: float = 1.0,
    min_rate: float = 1e-8,
    **loss_options,
) -> float:
    """Halve the step size from ``start`` until a fit of ``steps`` steps never increases the loss."""
    rate = start
    while rate >= min_rate:
        result = fit_toy_head(features, proposals, configs, steps, rate, **loss_options)
        if not result.diverged and result.is_non_increasing():
            logger.info("Selected learning rate %g", rate)
            return rate
        rate /= 2.0
    logger.warning("No monotone learning rate above %g; using it anyway", min_rate)
    return min_rate


def make_toy_problem(
    seed: int = 0,
    grid: Grid = (2, 2, 128.0),
    scales: Sequence[float] = (32.0, 64.0, 128.0),
    aspects: Sequence[float] = (0.5, 1.0, 2.0),
    n_boxes: int = 2,
    feature_scale: float = 5.0,
) -> Tuple[np.ndarray, ProposalBatch, GraspConfigBatch]:
    """
    Seeded separable targets for the toy head, matched from anchors.

    Ground-truth boxes are ``n_boxes`` distinct anchors of the grid, each with
    a random grasp angle, and ``match_proposals`` labels every anchor against
    them. Each anchor has its own feature direction, so the labels are
    linearly separable. With the default scales no other anchor reaches the
    positive overlap, which keeps every regression target at zero.

    Returns:
        ``(features, proposals, configs)`` with one row per anchor; ROIs of
        non-positive anchors target the background class

    Raises:
        ConfigError: If ``n_boxes`` is not between 1 and the number of anchors
    """
    anchors = generate_anchors(grid, scales, aspects)
    n = len(anchors)
    if not 1 <= n_boxes <= n:
        raise ConfigError(
            f"n_boxes must be between 1 and {n}, got {n_boxes}", {"n_boxes": n_boxes, "anchors": n}
        )
    ParameterValidator.validate_positive(feature_scale, "feature_scale")

    rng = np.random.default_rng(seed)
    chosen = rng.choice(n, size=n_boxes, replace=False)
    angles = rng.uniform(-90.0, 90.0, size=n_boxes)
    match = match_proposals(anchors, [anchors[i].box for i in chosen])

    gt_classes = np.array([angle_to_class(float(a)).index for a in angles], dtype=np.int64)
    classes = np.where(match.labels == POSITIVE, gt_classes[match.matched_gt], BACKGROUND_CLASS)
    logger.debug(
        "Toy problem: %d anchors, %d positive, %d negative",
        n, match.n_positive, match.n_negative,
    )

    features = feature_scale * np.eye(n)
    proposals = ProposalBatch.from_match(np.zeros((n, 2)), np.zeros((n, 4)), match)
    configs = GraspConfigBatch(
        np.zeros((n, NUM_CLASSES)), np.zeros((n, NUM_CLASSES, 4)), classes, match.target_deltas
    )
    return features, proposals, configs
