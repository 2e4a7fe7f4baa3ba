"""Base class for grasp predictors."""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from ...data.sample import Sample
from ...geometry import GraspPose5D
from ...utils.validators import ParameterValidator

logger = logging.getLogger(__name__)


@dataclass
class Prediction:
    """A predicted grasp and any conditions noted while producing it."""

    pose: GraspPose5D
    flags: List[str] = field(default_factory=list)


class BaseGraspPredictor(ABC):
    """Abstract base class for single-grasp predictors."""

    def __init__(self, width_factor: float = 1.2, height_factor: float = 0.6) -> None:
        """
        Initialize the predictor.

        Args:
            width_factor: Opening as a multiple of the object's minor extent
            height_factor: Plate size as a multiple of the object's major extent
        """
        ParameterValidator.validate_positive(width_factor, "width_factor")
        ParameterValidator.validate_positive(height_factor, "height_factor")
        self.width_factor = width_factor
        self.height_factor = height_factor

    @abstractmethod
    def predict(self, sample: Sample) -> Prediction:
        """
        Predict one grasp for a scene.

        Args:
            sample: Scene to predict on

        Returns:
            The predicted grasp
        """

    @property
    @abstractmethod
    def predictor_type(self) -> str:
        """Return the predictor type identifier."""

    def predict_all(
        self, samples: Sequence[Sample]
    ) -> Tuple[Dict[str, GraspPose5D], Dict[str, List[str]]]:
        """
        Predict every sample in id order.

        Returns:
            Poses by sample id and the flags raised for each flagged sample
        """
        poses: Dict[str, GraspPose5D] = {}
        flags: Dict[str, List[str]] = {}
        for sample in sorted(samples, key=lambda s: s.id):
            prediction = self.predict(sample)
            poses[sample.id] = prediction.pose
            if prediction.flags:
                flags[sample.id] = prediction.flags
        if flags:
            logger.warning("%s flagged %d of %d samples", self.predictor_type, len(flags), len(poses))
        return poses, flags
