"""Box-delta coding between anchors and target boxes."""

import math
from typing import Tuple, Union

from ..exceptions import DegenerateAnchor, DegenerateBox
from .anchors import Anchor, Box

Deltas = Tuple[float, float, float, float]


def _center_size(box: Box) -> Tuple[float, float, float, float]:
    x_min, y_min, x_max, y_max = box
    return ((x_min + x_max) / 2.0, (y_min + y_max) / 2.0, x_max - x_min, y_max - y_min)


def _anchor_box(anchor: Union[Anchor, Box]) -> Box:
    box = anchor.box if isinstance(anchor, Anchor) else tuple(anchor)
    _, _, w, h = _center_size(box)
    if w <= 0 or h <= 0:
        raise DegenerateAnchor(f"Anchor has zero width or height: {box}", {"box": list(box)})
    return box


def encode_deltas(anchor: Union[Anchor, Box], box: Box) -> Deltas:
    """
    ``(tx, ty, tw, th)`` of ``box`` relative to ``anchor``.

    ``tx = (x - xa) / wa``, ``ty = (y - ya) / ha``, ``tw = ln(w / wa)``,
    ``th = ln(h / ha)`` with centres and sizes of both boxes.

    Raises:
        DegenerateAnchor: If the anchor has zero width or height
        DegenerateBox: If the target box does
    """
    xa, ya, wa, ha = _center_size(_anchor_box(anchor))
    x, y, w, h = _center_size(box)
    if w <= 0 or h <= 0:
        raise DegenerateBox(f"Target box has zero width or height: {box}", {"box": list(box)})
    return ((x - xa) / wa, (y - ya) / ha, math.log(w / wa), math.log(h / ha))


def decode_deltas(anchor: Union[Anchor, Box], deltas: Deltas) -> Box:
    """Inverse of ``encode_deltas``."""
    xa, ya, wa, ha = _center_size(_anchor_box(anchor))
    tx, ty, tw, th = deltas
    x, y = xa + tx * wa, ya + ty * ha
    w, h = wa * math.exp(tw), ha * math.exp(th)
    return (x - w / 2.0, y - h / 2.0, x + w / 2.0, y + h / 2.0)
