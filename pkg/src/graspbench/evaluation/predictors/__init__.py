"""Grasp predictors."""

from .base import BaseGraspPredictor, Prediction
from .factory import PredictorFactory, PredictorType
from .pca import (
    ForegroundPCAPredictor,
    MaskPCAPredictor,
    PCAGrasp,
    foreground_mask,
    pca_baseline,
    pca_grasp,
)

__all__ = [
    "BaseGraspPredictor",
    "ForegroundPCAPredictor",
    "MaskPCAPredictor",
    "PCAGrasp",
    "Prediction",
    "PredictorFactory",
    "PredictorType",
    "foreground_mask",
    "pca_baseline",
    "pca_grasp",
]
