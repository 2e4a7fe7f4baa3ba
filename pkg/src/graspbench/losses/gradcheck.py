"""Finite-difference checks of the analytic loss gradients."""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List

import numpy as np

from .batches import GraspConfigBatch, ProposalBatch, random_config_batch, random_proposal_batch
from .losses import L1Variant, loss_gpn, loss_gr

logger = logging.getLogger(__name__)

DEFAULT_STEP = 1e-5
DEFAULT_TOLERANCE = 1e-4


def numeric_gradient(
    fn: Callable[[np.ndarray], float], point: np.ndarray, step: float = DEFAULT_STEP
) -> np.ndarray:
    """Central differences of ``fn`` at ``point``, one coordinate at a time."""
    point = np.array(point, dtype=np.float64)
    grad = np.zeros_like(point)
    flat, flat_grad = point.reshape(-1), grad.reshape(-1)
    for i in range(flat.size):
        original = flat[i]
        flat[i] = original + step
        upper = fn(point)
        flat[i] = original - step
        lower = fn(point)
        flat[i] = original
        flat_grad[i] = (upper - lower) / (2.0 * step)
    return grad


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    """Largest ``|a - n| / max(1, |a|, |n|)`` over all entries."""
    if analytic.size == 0:
        return 0.0
    denom = np.maximum(1.0, np.maximum(np.abs(analytic), np.abs(numeric)))
    return float(np.max(np.abs(analytic - numeric) / denom))


def check_gpn(
    batch: ProposalBatch,
    lam: float = 1.0,
    variant: L1Variant = "l1",
    normalize_cls: bool = False,
    step: float = DEFAULT_STEP,
) -> float:
    """Worst relative gradient error of ``loss_gpn`` on one batch."""
    analytic = loss_gpn(batch, lam, variant, normalize_cls).gradients

    def by_logits(logits: np.ndarray) -> float:
        return loss_gpn(batch.with_predictions(logits, batch.deltas), lam, variant, normalize_cls).value

    def by_deltas(deltas: np.ndarray) -> float:
        return loss_gpn(batch.with_predictions(batch.logits, deltas), lam, variant, normalize_cls).value

    return max(
        relative_error(analytic["logits"], numeric_gradient(by_logits, batch.logits, step)),
        relative_error(analytic["deltas"], numeric_gradient(by_deltas, batch.deltas, step)),
    )


def check_gr(
    batch: GraspConfigBatch,
    lam2: float = 1.0,
    variant: L1Variant = "l1",
    normalize_cls: bool = False,
    step: float = DEFAULT_STEP,
) -> float:
    """Worst relative gradient error of ``loss_gr`` on one batch."""
    analytic = loss_gr(batch, lam2, variant, normalize_cls).gradients

    def by_logits(logits: np.ndarray) -> float:
        return loss_gr(batch.with_predictions(logits, batch.offsets), lam2, variant, normalize_cls).value

    def by_offsets(offsets: np.ndarray) -> float:
        return loss_gr(batch.with_predictions(batch.angle_logits, offsets), lam2, variant, normalize_cls).value

    return max(
        relative_error(analytic["angle_logits"], numeric_gradient(by_logits, batch.angle_logits, step)),
        relative_error(analytic["offsets"], numeric_gradient(by_offsets, batch.offsets, step)),
    )


@dataclass
class GradCheckReport:
    """Outcome of a gradient-check sweep."""

    n_batches: int
    seed: int
    step: float
    tolerance: float
    max_error: Dict[str, float] = field(default_factory=dict)
    errors: Dict[str, List[float]] = field(default_factory=dict)

    @property
    def max_rel_error(self) -> float:
        return max(self.max_error.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_rel_error < self.tolerance

    def to_dict(self) -> Dict[str, object]:
        return {
            "n_batches": self.n_batches,
            "seed": self.seed,
            "step": self.step,
            "tolerance": self.tolerance,
            "max_rel_error": self.max_rel_error,
            "max_error": dict(self.max_error),
            "passed": self.passed,
        }


def run_gradcheck(
    n_batches: int = 100,
    seed: int = 0,
    lam: float = 1.0,
    lam2: float = 1.0,
    variant: L1Variant = "l1",
    normalize_cls: bool = False,
    step: float = DEFAULT_STEP,
    tolerance: float = DEFAULT_TOLERANCE,
) -> GradCheckReport:
    """
    Check both losses on ``n_batches`` seeded random batches.

    Args:
        n_batches: Number of proposal and configuration batches each
        seed: Seed of the batch generator
        step: Finite-difference step
        tolerance: Largest acceptable relative error
    """
    rng = np.random.default_rng(seed)
    errors: Dict[str, List[float]] = {"loss_gpn": [], "loss_gr": []}
    for _ in range(n_batches):
        proposals = random_proposal_batch(rng, int(rng.integers(2, 9)))
        configs = random_config_batch(rng, int(rng.integers(2, 7)))
        errors["loss_gpn"].append(check_gpn(proposals, lam, variant, normalize_cls, step))
        errors["loss_gr"].append(check_gr(configs, lam2, variant, normalize_cls, step))

    report = GradCheckReport(
        n_batches=n_batches,
        seed=seed,
        step=step,
        tolerance=tolerance,
        max_error={name: max(values, default=0.0) for name, values in errors.items()},
        errors=errors,
    )
    logger.info(
        "Gradient check over %d batches: max relative error %.3e (%s)",
        n_batches,
        report.max_rel_error,
        "pass" if report.passed else "FAIL",
    )
    return report
