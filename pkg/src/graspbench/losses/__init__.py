"""Anchors, proposal matching, delta coding and the grasp detection losses."""

from .anchors import Anchor, anchors_as_array, generate_anchors
from .batches import (
    GraspConfigBatch,
    GraspConfigBatchRecord,
    LossFixture,
    ProposalBatch,
    ProposalBatchRecord,
    random_config_batch,
    random_proposal_batch,
)
from .deltas import decode_deltas, encode_deltas
from .gradcheck import GradCheckReport, check_gpn, check_gr, numeric_gradient, run_gradcheck
from .losses import LossResult, cross_entropy, log_softmax, loss_gpn, loss_gr, loss_total
from .matching import IGNORE, NEGATIVE, POSITIVE, MatchResult, box_iou_matrix, match_proposals
from .toy_head import (
    CLASSIFICATION_TARGET,
    FitResult,
    ToyHead,
    auto_learning_rate,
    fit_toy_head,
    make_toy_problem,
)

__all__ = [
    "CLASSIFICATION_TARGET",
    "IGNORE",
    "NEGATIVE",
    "POSITIVE",
    "Anchor",
    "FitResult",
    "GradCheckReport",
    "GraspConfigBatch",
    "GraspConfigBatchRecord",
    "LossFixture",
    "LossResult",
    "MatchResult",
    "ProposalBatch",
    "ProposalBatchRecord",
    "ToyHead",
    "anchors_as_array",
    "auto_learning_rate",
    "box_iou_matrix",
    "check_gpn",
    "check_gr",
    "cross_entropy",
    "decode_deltas",
    "encode_deltas",
    "fit_toy_head",
    "generate_anchors",
    "log_softmax",
    "make_toy_problem",
    "loss_gpn",
    "loss_gr",
    "loss_total",
    "match_proposals",
    "numeric_gradient",
    "random_config_batch",
    "random_proposal_batch",
    "run_gradcheck",
]
