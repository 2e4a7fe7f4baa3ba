"""Proposal, grasp-configuration and total losses with analytic gradients.

Both losses are plain sums over their batch (classification may optionally be
averaged). Regression uses elementwise absolute error summed over the four
delta components, or smooth-L1 when selected; the L1 subgradient at zero is 0.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Literal, Tuple

import numpy as np

from ..exceptions import ConfigError, EmptyBatch, NonFinite
from ..geometry import BACKGROUND_CLASS
from ..utils.validators import ParameterValidator
from .batches import GraspConfigBatch, ProposalBatch
from .matching import IGNORE, POSITIVE

L1Variant = Literal["l1", "smooth_l1"]
SMOOTH_L1_BETA = 1.0


@dataclass
class LossResult:
    """Loss value, its named parts and gradients keyed by input name."""

    value: float
    components: Dict[str, float] = field(default_factory=dict)
    gradients: Dict[str, np.ndarray] = field(default_factory=dict)


def log_softmax(logits: np.ndarray) -> np.ndarray:
    """Row-wise log-softmax, shifted by the row maximum."""
    shifted = logits - np.max(logits, axis=1, keepdims=True)
    return shifted - np.log(np.sum(np.exp(shifted), axis=1, keepdims=True))


def cross_entropy(logits: np.ndarray, targets: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Per-row cross-entropy of softmax(logits) against integer targets.

    Returns:
        ``(losses, d losses / d logits)``
    """
    log_probs = log_softmax(logits)
    rows = np.arange(logits.shape[0])
    losses = -log_probs[rows, targets]
    grad = np.exp(log_probs)
    grad[rows, targets] -= 1.0
    return losses, grad


def regression(residual: np.ndarray, variant: L1Variant = "l1") -> Tuple[np.ndarray, np.ndarray]:
    """
    Elementwise regression penalty of ``prediction - target``.

    Returns:
        ``(penalties, d penalties / d residual)``
    """
    if variant == "l1":
        return np.abs(residual), np.sign(residual)
    if variant == "smooth_l1":
        small = np.abs(residual) < SMOOTH_L1_BETA
        values = np.where(
            small, 0.5 * residual ** 2 / SMOOTH_L1_BETA, np.abs(residual) - 0.5 * SMOOTH_L1_BETA
        )
        grads = np.where(small, residual / SMOOTH_L1_BETA, np.sign(residual))
        return values, grads
    raise ConfigError(f"Unknown l1 variant: {variant}", {"variant": variant})


def loss_gpn(
    batch: ProposalBatch,
    lam: float = 1.0,
    variant: L1Variant = "l1",
    normalize_cls: bool = False,
) -> LossResult:
    """
    Grasp-proposal loss.

    ``sum_i CE(softmax(p_i), p*_i) + lam * sum_i p*_i * L1(b_i, b*_i)`` over
    proposals that are not ignored.

    Args:
        batch: Logits, deltas and their targets
        lam: Regression weight
        variant: "l1" or "smooth_l1"
        normalize_cls: Divide the classification sum by the number of scored proposals

    Returns:
        Value with gradients for ``logits`` and ``deltas``

    Raises:
        EmptyBatch: If no proposal is scored
    """
    ParameterValidator.validate_non_negative(lam, "lam")
    scored = batch.labels != IGNORE
    n_scored = int(np.sum(scored))
    if batch.n == 0 or n_scored == 0:
        raise EmptyBatch("Proposal batch has no scored proposals", {"n": batch.n})

    ce, ce_grad = cross_entropy(batch.logits[scored], batch.labels[scored])
    scale = 1.0 / n_scored if normalize_cls else 1.0
    cls_value = float(np.sum(ce)) * scale
    grad_logits = np.zeros_like(batch.logits)
    grad_logits[scored] = ce_grad * scale

    positive = batch.labels == POSITIVE
    penalties, reg_grad = regression(batch.deltas - batch.target_deltas, variant)
    reg_value = float(np.sum(penalties[positive]))
    grad_deltas = np.where(positive[:, None], lam * reg_grad, 0.0)

    return LossResult(
        value=cls_value + lam * reg_value,
        components={"classification": cls_value, "regression": reg_value},
        gradients={"logits": grad_logits, "deltas": grad_deltas},
    )


def loss_gr(
    batch: GraspConfigBatch,
    lam2: float = 1.0,
    variant: L1Variant = "l1",
    normalize_cls: bool = False,
) -> LossResult:
    """
    Grasp-configuration loss.

    ``sum CE(softmax(rho), c*) + lam2 * sum_c 1[c != 0] L1(beta_c, beta*_c)``;
    only the offsets of each ROI's own target class are regressed, and never
    for background targets.

    Returns:
        Value with gradients for ``angle_logits`` and ``offsets``

    Raises:
        EmptyBatch: If the batch has no ROIs
    """
    ParameterValidator.validate_non_negative(lam2, "lam2")
    if batch.n == 0:
        raise EmptyBatch("Configuration batch has no ROIs")

    ce, ce_grad = cross_entropy(batch.angle_logits, batch.target_class)
    scale = 1.0 / batch.n if normalize_cls else 1.0
    cls_value = float(np.sum(ce)) * scale

    rows = np.arange(batch.n)
    foreground = batch.target_class != BACKGROUND_CLASS
    chosen = batch.offsets[rows, batch.target_class]
    penalties, reg_grad = regression(chosen - batch.target_offsets, variant)
    reg_value = float(np.sum(penalties[foreground]))

    grad_offsets = np.zeros_like(batch.offsets)
    grad_offsets[rows[foreground], batch.target_class[foreground]] = lam2 * reg_grad[foreground]

    return LossResult(
        value=cls_value + lam2 * reg_value,
        components={"classification": cls_value, "regression": reg_value},
        gradients={"angle_logits": ce_grad * scale, "offsets": grad_offsets},
    )


def loss_total(gpn_value: float, gr_value: float) -> float:
    """
    Sum of the proposal and configuration losses.

    Raises:
        NonFinite: If either value is not finite
    """
    if not (math.isfinite(gpn_value) and math.isfinite(gr_value)):
        raise NonFinite(
            "Loss values must be finite",
            {"gpn": repr(gpn_value), "gr": repr(gr_value)},
        )
    return gpn_value + gr_value
