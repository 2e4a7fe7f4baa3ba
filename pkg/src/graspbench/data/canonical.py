"""Canonical JSON dataset format.

A dataset directory holds ``samples/<id>.json`` (one ``SampleRecord`` per
scene) next to optional ``load_report.json`` and ``run_config.json``. Images
are referenced by absolute path; grasps are stored as pose arrays
``[x, y, theta, h, w]`` rounded to 6 fractional digits.
"""

import json
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Union

from pydantic import BaseModel, Field

from ..exceptions import EmptyDataset, ParseError
from ..geometry import GraspPose5D, GraspQuad, fit_pose, pose_to_quad, quad_to_pose
from ..geometry.types import RECTANGLE_TOLERANCE
from .imaging import PathLike, write_depth, write_mask, write_rgb
from .sample import LoadReport, Provenance, Sample

logger = logging.getLogger(__name__)

SAMPLES_DIR = "samples"
IMAGES_DIR = "images"
DECIMALS = 6


def _fixed(value: float) -> float:
    # "+ 0.0" folds -0.0 into 0.0
    return round(value, DECIMALS) + 0.0


class SampleRecord(BaseModel):
    """JSON form of a ``Sample``."""

    id: str
    object_category: str = ""
    provenance: Provenance = Provenance.ORIGINAL
    rgb_path: Optional[str] = None
    depth_path: Optional[str] = None
    mask_path: Optional[str] = None
    grasps_pos: List[List[float]] = Field(default_factory=list)
    grasps_neg: List[List[float]] = Field(default_factory=list)
    flags: List[str] = Field(default_factory=list)


class LoadReportRecord(BaseModel):
    """JSON form of a ``LoadReport``."""

    source: str
    n_samples: int
    n_rectangles: int
    dropped_non_finite: int
    repaired: int
    empty_samples: List[str]
    warnings: List[str]


def pose_to_record(pose: GraspPose5D) -> List[float]:
    x, y, theta, h, w = (_fixed(v) for v in pose.as_list())
    # rounding can carry theta up to 90, the same grasp as -90
    if theta >= 90.0:
        theta = _fixed(theta - 180.0)
    return [x, y, theta, h, w]


def record_to_pose(values: List[float]) -> GraspPose5D:
    if len(values) != 5:
        raise ParseError(f"Grasp pose needs 5 values, got {values}")
    x, y, theta, h, w = values
    return GraspPose5D.from_unnormalized(x, y, theta, h, w)


def _quad_record(quad: GraspQuad, tol: float) -> List[float]:
    pose = quad_to_pose(quad, tol) if quad.is_rectangle(tol) else fit_pose(quad)
    return pose_to_record(pose)


def _path_text(path: Optional[Path]) -> Optional[str]:
    return None if path is None else str(Path(path).resolve())


def sample_to_record(sample: Sample, tol: float = RECTANGLE_TOLERANCE) -> SampleRecord:
    return SampleRecord(
        id=sample.id,
        object_category=sample.object_category,
        provenance=sample.provenance,
        rgb_path=_path_text(sample.rgb_path),
        depth_path=_path_text(sample.depth_path),
        mask_path=_path_text(sample.mask_path),
        grasps_pos=[_quad_record(q, tol) for q in sample.grasps_pos],
        grasps_neg=[_quad_record(q, tol) for q in sample.grasps_neg],
        flags=list(sample.flags),
    )


def record_to_sample(record: SampleRecord) -> Sample:
    def as_path(text: Optional[str]) -> Optional[Path]:
        return None if text is None else Path(text)

    return Sample(
        id=record.id,
        object_category=record.object_category,
        provenance=record.provenance,
        rgb_path=as_path(record.rgb_path),
        depth_path=as_path(record.depth_path),
        mask_path=as_path(record.mask_path),
        grasps_pos=[pose_to_quad(record_to_pose(v)) for v in record.grasps_pos],
        grasps_neg=[pose_to_quad(record_to_pose(v)) for v in record.grasps_neg],
        flags=list(record.flags),
    )


def materialize_images(sample: Sample, out_dir: PathLike) -> Sample:
    """Write in-memory arrays under ``out_dir/images`` and point the sample at them."""
    images = Path(out_dir) / IMAGES_DIR
    changes = {}
    if sample.rgb_path is None and sample.rgb_data is not None:
        changes["rgb_path"] = write_rgb(images / f"{sample.id}_rgb.png", sample.rgb_data)
    if sample.depth_path is None and sample.depth_data is not None:
        changes["depth_path"] = write_depth(images / f"{sample.id}_depth.npy", sample.depth_data)
    if sample.mask_path is None and sample.mask_data is not None:
        changes["mask_path"] = write_mask(images / f"{sample.id}_mask.png", sample.mask_data)
    return sample.evolve(**changes) if changes else sample


def write_sample(sample: Sample, out_dir: PathLike, tol: float = RECTANGLE_TOLERANCE) -> Path:
    """Write one sample record, materialising in-memory images first."""
    sample = materialize_images(sample, out_dir)
    path = Path(out_dir) / SAMPLES_DIR / f"{sample.id}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(sample_to_record(sample, tol).model_dump_json(indent=2) + "\n")
    return path


def write_dataset(
    samples: Iterable[Sample], out_dir: PathLike, tol: float = RECTANGLE_TOLERANCE
) -> int:
    """Write every sample; returns how many were written."""
    count = 0
    for sample in samples:
        write_sample(sample, out_dir, tol)
        count += 1
    logger.info("Wrote %d sample records to %s", count, out_dir)
    return count


def read_dataset(dir_path: PathLike) -> List[Sample]:
    """
    Read a canonical dataset directory.

    Raises:
        EmptyDataset: If the directory holds no sample records
        ParseError: If a record is not valid JSON for the schema
    """
    folder = Path(dir_path) / SAMPLES_DIR
    files = sorted(folder.glob("*.json")) if folder.is_dir() else []
    if not files:
        raise EmptyDataset(f"No sample records in {folder}", {"directory": str(dir_path)})
    samples = []
    for path in files:
        try:
            record = SampleRecord.model_validate_json(path.read_text())
        except ValueError as exc:
            raise ParseError(f"Invalid sample record {path}: {exc}", {"file": str(path)}) from exc
        samples.append(record_to_sample(record))
    samples.sort(key=lambda s: s.id)
    return samples


def write_load_report(report: LoadReport, out_dir: PathLike) -> Path:
    path = Path(out_dir) / "load_report.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    record = LoadReportRecord(**vars(report))
    path.write_text(record.model_dump_json(indent=2) + "\n")
    return path


def write_json(path: PathLike, payload: dict) -> Path:
    """Write a plain JSON document with stable key order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


class PredictionsRecord(BaseModel):
    """Predicted grasps by sample id, each a ranked list of ``[x, y, theta, h, w]``."""

    predictions: Dict[str, List[List[float]]]
    flags: Dict[str, List[str]] = Field(default_factory=dict)


class SplitRecord(BaseModel):
    """Train and test ids of a split."""

    mode: str
    ratio_train: float
    seed: int
    train: List[str]
    test: List[str]


def write_predictions(
    path: PathLike,
    predictions: Dict[str, Union[GraspPose5D, List[GraspPose5D]]],
    flags: Optional[Dict[str, List[str]]] = None,
) -> Path:
    ranked = {
        key: [pose_to_record(p) for p in ([value] if isinstance(value, GraspPose5D) else value)]
        for key, value in sorted(predictions.items())
    }
    record = PredictionsRecord(predictions=ranked, flags=dict(sorted((flags or {}).items())))
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(record.model_dump_json(indent=2) + "\n")
    return path


def read_predictions(path: PathLike) -> Dict[str, List[GraspPose5D]]:
    """
    Raises:
        ParseError: If the file is not a valid predictions record
    """
    try:
        record = PredictionsRecord.model_validate_json(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise ParseError(f"Invalid predictions file {path}: {exc}", {"file": str(path)}) from exc
    return {
        key: [record_to_pose(values) for values in ranked]
        for key, ranked in record.predictions.items()
    }


def read_split(path: PathLike) -> SplitRecord:
    try:
        return SplitRecord.model_validate_json(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise ParseError(f"Invalid split file {path}: {exc}", {"file": str(path)}) from exc
