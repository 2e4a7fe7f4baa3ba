"""Desk-scale experiments built from synthetic scenes."""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

from ..data.sample import Sample
from ..data.synthetic import make_bar_scenes
from ..preprocessing.masking import composite
from .metric import MetricConfig, evaluate
from .predictors import PredictorFactory
from .report import EvalReport

logger = logging.getLogger(__name__)


def maskify_samples(samples: List[Sample]) -> List[Sample]:
    """In-memory copies of ``samples`` with the background painted white."""
    out = []
    for sample in samples:
        masked = composite(sample.rgb, sample.mask)
        out.append(sample.evolve(rgb_data=masked.rgb, rgb_path=None, provenance=masked.provenance))
    return out


def synthetic_baseline(
    n: int = 200,
    seed: int = 0,
    config: MetricConfig = MetricConfig(),
    width_factor: float = 1.2,
    height_factor: float = 0.6,
) -> EvalReport:
    """Mask-composite white-background bar scenes, predict by mask PCA and score."""
    scenes = maskify_samples(make_bar_scenes(n, seed=seed))
    predictor = PredictorFactory.create("mask_pca", width_factor, height_factor)
    poses, _ = predictor.predict_all(scenes)
    return evaluate(poses, scenes, config=config)


@dataclass
class SceneShiftResult:
    """Accuracy of one predictor on raw cluttered scenes and on their composited copies."""

    raw: EvalReport
    composited: EvalReport

    @property
    def gain(self) -> float:
        return self.composited.accuracy - self.raw.accuracy

    def to_dict(self) -> Dict[str, object]:
        return {
            "raw_accuracy": self.raw.accuracy,
            "composited_accuracy": self.composited.accuracy,
            "gain": self.gain,
            "n_scenes": self.raw.n_total,
        }


def run_scene_shift(
    n: int = 200,
    seed: int = 0,
    config: MetricConfig = MetricConfig(),
    width_factor: float = 1.2,
    height_factor: float = 0.6,
    scenes: Optional[List[Sample]] = None,
) -> SceneShiftResult:
    """
    Background-robustness comparison.

    Cluttered bar scenes are scored with the mask-free foreground predictor,
    once on the raw images and once after mask compositing.
    """
    if scenes is None:
        scenes = make_bar_scenes(n, seed=seed, background="clutter")
    predictor = PredictorFactory.create("foreground_pca", width_factor, height_factor)

    raw_poses, _ = predictor.predict_all(scenes)
    composited = maskify_samples(scenes)
    clean_poses, _ = predictor.predict_all(composited)

    result = SceneShiftResult(
        raw=evaluate(raw_poses, scenes, config=config),
        composited=evaluate(clean_poses, composited, config=config),
    )
    logger.info(
        "Scene shift: raw %.3f, composited %.3f",
        result.raw.accuracy, result.composited.accuracy,
    )
    return result
