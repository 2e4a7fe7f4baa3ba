"""Image-wise and object-wise train/test splits."""

import logging
import math
from collections import defaultdict
from typing import Dict, List, Tuple

from ..exceptions import EmptyDataset, MissingCategories
from .sample import Sample, SplitSpec
from .shuffle import PortableRandom

logger = logging.getLogger(__name__)


def _by_id(samples: List[Sample]) -> List[Sample]:
    return sorted(samples, key=lambda s: s.id)


def _image_wise(samples: List[Sample], spec: SplitSpec) -> Tuple[List[Sample], List[Sample]]:
    shuffled = PortableRandom(spec.seed).shuffled(_by_id(samples))
    n_train = math.floor(spec.ratio_train * len(shuffled) + 0.5)
    return shuffled[:n_train], shuffled[n_train:]


def _object_wise(samples: List[Sample], spec: SplitSpec) -> Tuple[List[Sample], List[Sample]]:
    unlabeled = [s.id for s in samples if not s.object_category]
    if unlabeled:
        raise MissingCategories(
            f"{len(unlabeled)} samples have no object category",
            {"ids": sorted(unlabeled)},
        )

    groups: Dict[str, List[Sample]] = defaultdict(list)
    for sample in samples:
        groups[sample.object_category].append(sample)

    # seeded order first, then a stable sort by size keeps it among equal sizes
    categories = PortableRandom(spec.seed).shuffled(sorted(groups))
    categories.sort(key=lambda c: len(groups[c]), reverse=True)

    target = spec.ratio_train * len(samples)
    train_count = 0
    train_categories, test_categories = [], []
    for category in categories:
        size = len(groups[category])
        if abs(train_count + size - target) < abs(train_count - target):
            train_categories.append(category)
            train_count += size
        else:
            test_categories.append(category)

    train = [s for c in train_categories for s in groups[c]]
    test = [s for c in test_categories for s in groups[c]]
    return train, test


def split(samples: List[Sample], spec: SplitSpec) -> Tuple[List[Sample], List[Sample]]:
    """
    Partition samples into train and test sets.

    Image-wise: samples (ordered by id) are shuffled with the seeded portable
    generator and the first ``ratio_train`` share becomes train.
    Object-wise: categories are shuffled, ordered by descending size and
    packed greedily into train while that moves the train count closer to
    ``ratio_train`` of all samples; the rest go to test.

    Args:
        samples: Samples to partition
        spec: Split mode, ratio and seed

    Returns:
        ``(train, test)``, each ordered by id

    Raises:
        EmptyDataset: If ``samples`` is empty
        MissingCategories: For object-wise splits with unlabeled samples
    """
    if not samples:
        raise EmptyDataset("Cannot split an empty dataset")
    if spec.mode == "object_wise":
        train, test = _object_wise(samples, spec)
    else:
        train, test = _image_wise(samples, spec)
    logger.info("%s split: %d train / %d test", spec.mode, len(train), len(test))
    return _by_id(train), _by_id(test)
