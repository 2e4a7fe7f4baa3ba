"""Dataset loading, canonical records, splits and synthetic scenes."""

from .canonical import (
    PredictionsRecord,
    SampleRecord,
    SplitRecord,
    read_dataset,
    read_predictions,
    read_split,
    record_to_sample,
    sample_to_record,
    write_dataset,
    write_load_report,
    write_predictions,
    write_sample,
)
from .cornell import load_cornell, parse_rectangles
from .jacquard import load_jacquard, parse_grasp_line
from .sample import LoadReport, Provenance, Sample, SplitSpec
from .shuffle import PortableRandom
from .splits import split
from .synthetic import make_bar_scene, make_bar_scenes

__all__ = [
    "LoadReport",
    "PortableRandom",
    "PredictionsRecord",
    "Provenance",
    "Sample",
    "SampleRecord",
    "SplitRecord",
    "SplitSpec",
    "load_cornell",
    "load_jacquard",
    "make_bar_scene",
    "make_bar_scenes",
    "parse_grasp_line",
    "parse_rectangles",
    "read_dataset",
    "read_predictions",
    "read_split",
    "record_to_sample",
    "sample_to_record",
    "split",
    "write_dataset",
    "write_load_report",
    "write_predictions",
    "write_sample",
]
