"""The rectangle metric, accuracy reports, baseline predictors and experiments."""

from .experiments import SceneShiftResult, maskify_samples, run_scene_shift, synthetic_baseline
from .metric import Correctness, MetricConfig, angle_difference, evaluate, is_correct
from .predictors import (
    BaseGraspPredictor,
    ForegroundPCAPredictor,
    MaskPCAPredictor,
    PCAGrasp,
    Prediction,
    PredictorFactory,
    foreground_mask,
    pca_baseline,
    pca_grasp,
)
from .report import EvalMetadata, EvalReport, SampleResult

__all__ = [
    "BaseGraspPredictor",
    "Correctness",
    "EvalMetadata",
    "EvalReport",
    "ForegroundPCAPredictor",
    "MaskPCAPredictor",
    "MetricConfig",
    "PCAGrasp",
    "Prediction",
    "PredictorFactory",
    "SampleResult",
    "SceneShiftResult",
    "angle_difference",
    "evaluate",
    "foreground_mask",
    "is_correct",
    "maskify_samples",
    "pca_baseline",
    "pca_grasp",
    "run_scene_shift",
    "synthetic_baseline",
]
