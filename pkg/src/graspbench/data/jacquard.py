"""Jacquard grasp dataset loader.

Each scene ``<id>`` provides ``<id>_grasps.txt`` with one grasp per line as
``x;y;theta;opening;jaw_size`` (theta in degrees), ``<id>_RGB.png`` and
optionally ``<id>_perfect_depth.tiff`` / ``<id>_stereo_depth.tiff`` and
``<id>_mask.png``. The scene's parent directory names its object category.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple

from ..exceptions import EmptyDataset, MissingImage, ParseError
from ..geometry import GraspPose5D, GraspQuad, pose_to_quad
from .imaging import PathLike
from .sample import LoadReport, Sample

logger = logging.getLogger(__name__)

GRASP_SUFFIX = "_grasps.txt"


def parse_grasp_line(line: str, path: str = "<string>", line_no: int = 0) -> GraspPose5D:
    """
    Parse ``x;y;theta;opening;jaw_size`` into a pose.

    The opening becomes ``w`` and the jaw size ``h``; theta is normalised to
    [-90, 90).

    Raises:
        ParseError: On a wrong field count, non-numeric or non-finite fields
            or non-positive sizes
    """
    fields = line.strip().split(";")
    if len(fields) != 5:
        raise ParseError(
            f"{path}:{line_no}: expected 5 ';'-separated fields, got {line.strip()!r}",
            {"file": path, "line": line_no},
        )
    try:
        x, y, theta, opening, jaw_size = (float(f) for f in fields)
    except ValueError as exc:
        raise ParseError(
            f"{path}:{line_no}: non-numeric field in {line.strip()!r}",
            {"file": path, "line": line_no},
        ) from exc
    if not all(math.isfinite(v) for v in (x, y, theta, opening, jaw_size)):
        raise ParseError(f"{path}:{line_no}: non-finite field", {"file": path, "line": line_no})
    if opening <= 0 or jaw_size <= 0:
        raise ParseError(
            f"{path}:{line_no}: opening and jaw size must be positive",
            {"file": path, "line": line_no},
        )
    return GraspPose5D.from_unnormalized(x, y, theta, h=jaw_size, w=opening)


def _first_existing(*candidates: Path) -> Optional[Path]:
    return next((c for c in candidates if c.exists()), None)


def _load_scene(grasp_path: Path) -> Tuple[Sample, LoadReport]:
    scene_id = grasp_path.name[: -len(GRASP_SUFFIX)]
    folder = grasp_path.parent
    rgb_path = folder / f"{scene_id}_RGB.png"
    if not rgb_path.exists():
        raise MissingImage(f"No image for {scene_id}: {rgb_path}", {"id": scene_id})

    grasps: List[GraspQuad] = []
    for line_no, raw in enumerate(grasp_path.read_text().splitlines(), start=1):
        if raw.strip():
            grasps.append(pose_to_quad(parse_grasp_line(raw, str(grasp_path), line_no)))

    report = LoadReport(source=scene_id, n_samples=1, n_rectangles=len(grasps))
    if not grasps:
        report.empty_samples.append(scene_id)
        report.warnings.append(f"{scene_id}: grasp file is empty")

    sample = Sample(
        id=scene_id,
        grasps_pos=grasps,
        object_category=folder.name,
        rgb_path=rgb_path,
        depth_path=_first_existing(
            folder / f"{scene_id}_perfect_depth.tiff",
            folder / f"{scene_id}_stereo_depth.tiff",
            folder / f"{scene_id}_depth.npy",
        ),
        mask_path=_first_existing(folder / f"{scene_id}_mask.png"),
    )
    return sample, report


def load_jacquard(
    dir_path: PathLike, workers: int = 1
) -> Tuple[List[Sample], LoadReport]:
    """
    Load every Jacquard scene under ``dir_path``.

    Missing depth is tolerated; scenes with empty grasp files are kept and
    listed in the report.

    Returns:
        Samples ordered by id, and the merged load report

    Raises:
        EmptyDataset: If no grasp files are found
        MissingImage: If a scene has no RGB image
        ParseError: On malformed grasp lines
    """
    root = Path(dir_path)
    grasp_files = sorted(root.rglob(f"*{GRASP_SUFFIX}"))
    if not grasp_files:
        raise EmptyDataset(f"No Jacquard scenes found in {root}", {"directory": str(root)})

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_load_scene, grasp_files))

    report = LoadReport(source=str(root))
    samples = []
    for sample, scene_report in results:
        samples.append(sample)
        report.merge(scene_report)
    samples.sort(key=lambda s: s.id)

    for scene_id in report.empty_samples:
        logger.warning("Scene %s has no grasps", scene_id)
    logger.info(report.summary())
    return samples, report
