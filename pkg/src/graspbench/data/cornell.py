"""Cornell grasp dataset loader.

Expected layout (subdirectories allowed)::

    pcdNNNNr.png      RGB image
    pcdNNNNcpos.txt   positive rectangles, one "x y" pair per line, 4 lines each
    pcdNNNNcneg.txt   negative rectangles (optional)
    pcdNNNNd.tiff     depth map (optional, .npy also accepted)
    pcdNNNNmask.png   object mask (optional)
    z.txt             "<image number> <object id> <description>" (optional)
"""

import logging
import math
import re
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from ..exceptions import EmptyDataset, MissingImage, ParseError
from ..geometry import GraspQuad
from ..geometry.types import RECTANGLE_TOLERANCE
from .imaging import PathLike
from .sample import LoadReport, Sample

logger = logging.getLogger(__name__)

_SCENE_PATTERN = re.compile(r"^(pcd\d+)cpos\.txt$")


def parse_rectangles(
    path: PathLike, tol: float = RECTANGLE_TOLERANCE
) -> Tuple[List[GraspQuad], LoadReport]:
    """
    Parse a Cornell rectangle file.

    Args:
        path: ``cpos``/``cneg`` file with 4 lines per rectangle
        tol: Tolerance used to count rectangles that need fitting

    Returns:
        Finite rectangles and a report counting dropped and repaired ones

    Raises:
        ParseError: On a malformed line or a line count not divisible by 4
    """
    path = Path(path)
    report = LoadReport(source=str(path))
    points: List[Tuple[float, float]] = []
    for line_no, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(
                f"{path}:{line_no}: expected 'x y', got {line!r}",
                {"file": str(path), "line": line_no},
            )
        try:
            points.append((float(tokens[0]), float(tokens[1])))
        except ValueError as exc:
            raise ParseError(
                f"{path}:{line_no}: non-numeric coordinate in {line!r}",
                {"file": str(path), "line": line_no},
            ) from exc

    if len(points) % 4 != 0:
        raise ParseError(
            f"{path}: {len(points)} coordinate lines is not a multiple of 4",
            {"file": str(path), "lines": len(points)},
        )

    quads = []
    for start in range(0, len(points), 4):
        corners = points[start:start + 4]
        if not all(math.isfinite(c) for corner in corners for c in corner):
            report.dropped_non_finite += 1
            continue
        quad = GraspQuad(tuple(corners))
        if not quad.is_rectangle(tol):
            report.repaired += 1
        quads.append(quad)
    report.n_rectangles = len(quads)
    return quads, report


def _read_categories(root: Path) -> Dict[int, str]:
    """Image number to object id, from the first ``z.txt`` under ``root``."""
    mapping_file = next(iter(sorted(root.rglob("z.txt"))), None)
    if mapping_file is None:
        return {}
    categories: Dict[int, str] = {}
    for line_no, raw in enumerate(mapping_file.read_text().splitlines(), start=1):
        tokens = raw.split()
        if len(tokens) < 2:
            continue
        try:
            categories[int(tokens[0])] = tokens[1]
        except ValueError as exc:
            raise ParseError(
                f"{mapping_file}:{line_no}: bad category line {raw!r}",
                {"file": str(mapping_file), "line": line_no},
            ) from exc
    return categories


def _first_existing(*candidates: Path) -> Optional[Path]:
    return next((c for c in candidates if c.exists()), None)


def _load_scene(
    cpos_path: Path, categories: Dict[int, str], tol: float
) -> Tuple[Sample, LoadReport]:
    scene_id = _SCENE_PATTERN.match(cpos_path.name).group(1)
    folder = cpos_path.parent
    rgb_path = folder / f"{scene_id}r.png"
    if not rgb_path.exists():
        raise MissingImage(f"No image for {scene_id}: {rgb_path}", {"id": scene_id})

    grasps_pos, report = parse_rectangles(cpos_path, tol)
    grasps_neg: List[GraspQuad] = []
    neg_path = folder / f"{scene_id}cneg.txt"
    if neg_path.exists():
        grasps_neg, neg_report = parse_rectangles(neg_path, tol)
        report.dropped_non_finite += neg_report.dropped_non_finite

    report.source = scene_id
    report.n_samples = 1
    if report.dropped_non_finite:
        report.warnings.append(
            f"{scene_id}: dropped {report.dropped_non_finite} non-finite rectangles"
        )
    if not grasps_pos:
        report.empty_samples.append(scene_id)

    sample = Sample(
        id=scene_id,
        grasps_pos=grasps_pos,
        grasps_neg=grasps_neg,
        object_category=categories.get(int(scene_id[3:]), ""),
        rgb_path=rgb_path,
        depth_path=_first_existing(folder / f"{scene_id}d.tiff", folder / f"{scene_id}d.npy"),
        mask_path=_first_existing(folder / f"{scene_id}mask.png"),
    )
    return sample, report


def load_cornell(
    dir_path: PathLike,
    workers: int = 1,
    tol: float = RECTANGLE_TOLERANCE,
) -> Tuple[List[Sample], LoadReport]:
    """
    Load every Cornell scene under ``dir_path``.

    Args:
        dir_path: Dataset directory
        workers: Number of scenes parsed concurrently
        tol: Rectangle tolerance for the repaired count

    Returns:
        Samples ordered by id, and the merged load report

    Raises:
        EmptyDataset: If no ``pcdNNNNcpos.txt`` files are found
        MissingImage: If a scene has rectangles but no image
        ParseError: On malformed rectangle files
    """
    root = Path(dir_path)
    scene_files = sorted(
        p for p in root.rglob("pcd*cpos.txt") if _SCENE_PATTERN.match(p.name)
    )
    if not scene_files:
        raise EmptyDataset(f"No Cornell scenes found in {root}", {"directory": str(root)})

    categories = _read_categories(root)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda p: _load_scene(p, categories, tol), scene_files))

    report = LoadReport(source=str(root))
    samples = []
    for sample, scene_report in results:
        samples.append(sample)
        report.merge(scene_report)
    samples.sort(key=lambda s: s.id)

    if report.dropped_non_finite:
        logger.warning(
            "Dropped %d rectangles with non-finite coordinates", report.dropped_non_finite
        )
    logger.info(report.summary())
    return samples, report
