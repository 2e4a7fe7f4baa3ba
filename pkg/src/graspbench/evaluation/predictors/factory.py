"""Factory for creating grasp predictors."""

from typing import Literal

from ...exceptions import ConfigError
from .base import BaseGraspPredictor
from .pca import ForegroundPCAPredictor, MaskPCAPredictor

PredictorType = Literal["mask_pca", "foreground_pca"]


class PredictorFactory:
    """Factory class for creating grasp predictors."""

    _predictors = {
        "mask_pca": MaskPCAPredictor,
        "foreground_pca": ForegroundPCAPredictor,
    }

    @classmethod
    def create(
        cls,
        predictor_type: str,
        width_factor: float = 1.2,
        height_factor: float = 0.6,
    ) -> BaseGraspPredictor:
        """
        Create a predictor instance.

        Args:
            predictor_type: "mask_pca" or "foreground_pca"
            width_factor: Opening as a multiple of the minor extent
            height_factor: Plate size as a multiple of the major extent

        Raises:
            ConfigError: If predictor_type is not recognized
        """
        key = predictor_type.lower().replace("-", "_")
        if key not in cls._predictors:
            available = ", ".join(cls._predictors.keys())
            raise ConfigError(
                f"Unknown predictor type: {predictor_type}. Available: {available}",
                {"predictor": predictor_type},
            )
        return cls._predictors[key](width_factor, height_factor)

    @classmethod
    def available_predictors(cls) -> list[str]:
        """Get list of available predictor types."""
        return list(cls._predictors.keys())
