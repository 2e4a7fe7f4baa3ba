"""Image, depth and mask file I/O on top of OpenCV."""

from pathlib import Path
from typing import Union

import cv2
import numpy as np

from ..exceptions import MissingImage, ParseError

PathLike = Union[str, Path]

MASK_THRESHOLD = 128


def read_rgb(path: PathLike) -> np.ndarray:
    """Read an 8-bit colour image as H x W x 3 RGB."""
    image = cv2.imread(str(path), cv2.IMREAD_COLOR)
    if image is None:
        raise MissingImage(f"Cannot read image {path}", {"path": str(path)})
    return cv2.cvtColor(image, cv2.COLOR_BGR2RGB)


def write_rgb(path: PathLike, rgb: np.ndarray) -> Path:
    """Write an RGB image; the format follows the file suffix."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if not cv2.imwrite(str(path), cv2.cvtColor(rgb, cv2.COLOR_RGB2BGR)):
        raise MissingImage(f"Cannot write image {path}", {"path": str(path)})
    return path


def read_depth(path: PathLike) -> np.ndarray:
    """
    Read a depth map as float32.

    Accepts ``.npy`` float arrays, float TIFFs and 16-bit grayscale images.
    """
    path = Path(path)
    if path.suffix == ".npy":
        depth = np.load(path)
    else:
        depth = cv2.imread(str(path), cv2.IMREAD_ANYDEPTH | cv2.IMREAD_UNCHANGED)
        if depth is None:
            raise MissingImage(f"Cannot read depth map {path}", {"path": str(path)})
    depth = np.asarray(depth, dtype=np.float32)
    if depth.ndim == 3:
        depth = depth[..., 0]
    if depth.ndim != 2:
        raise ParseError(f"Depth map {path} is not single-channel", {"shape": list(depth.shape)})
    return depth


def write_depth(path: PathLike, depth: np.ndarray) -> Path:
    """Write a depth map as a float32 ``.npy`` array."""
    path = Path(path).with_suffix(".npy")
    path.parent.mkdir(parents=True, exist_ok=True)
    np.save(path, depth.astype(np.float32))
    return path


def binarize_mask(mask: np.ndarray) -> np.ndarray:
    """8-bit masks count as object at >= 128; boolean and 0/1 masks at non-zero."""
    if mask.dtype == np.bool_:
        return mask.copy()
    if mask.dtype == np.uint8 and mask.max(initial=0) > 1:
        return mask >= MASK_THRESHOLD
    return mask != 0


def read_mask(path: PathLike) -> np.ndarray:
    """Read a single-channel 8-bit mask as a boolean map."""
    mask = cv2.imread(str(path), cv2.IMREAD_GRAYSCALE)
    if mask is None:
        raise MissingImage(f"Cannot read mask {path}", {"path": str(path)})
    return mask >= MASK_THRESHOLD


def write_mask(path: PathLike, mask: np.ndarray) -> Path:
    """Write a boolean mask as 0/255 grayscale."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    cv2.imwrite(str(path), np.where(binarize_mask(mask), 255, 0).astype(np.uint8))
    return path
