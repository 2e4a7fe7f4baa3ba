"""graspbench - grasp representations, losses, data pipeline and evaluation for grasp detection."""

__version__ = "0.1.0"

from .config.settings import Settings
from .evaluation.predictors import PredictorFactory

__all__ = ["PredictorFactory", "Settings"]
