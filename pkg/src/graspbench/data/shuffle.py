"""Portable seeded shuffling.

A 64-bit linear congruential generator (Knuth's MMIX constants) whose output
is the high 32 bits of the state. Any implementation of the same recurrence
reproduces graspbench splits and augmentation choices exactly:

    state = (6364136223846793005 * state + 1442695040888963407) mod 2**64
    output = state >> 32

Shuffles are Fisher-Yates from the last index down, with
``j = output mod (i + 1)``.
"""

from typing import List, Sequence, TypeVar

from ..exceptions import OutOfRange

T = TypeVar("T")

_MULTIPLIER = 6364136223846793005
_INCREMENT = 1442695040888963407
_MASK = (1 << 64) - 1


class PortableRandom:
    """Seeded LCG with a stable, documented output sequence."""

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK

    def next_u32(self) -> int:
        self.state = (_MULTIPLIER * self.state + _INCREMENT) & _MASK
        return self.state >> 32

    def below(self, n: int) -> int:
        """Integer in [0, n)."""
        if n <= 0:
            raise OutOfRange(f"n must be positive, got {n}", {"n": n})
        return self.next_u32() % n

    def permutation(self, n: int) -> List[int]:
        order = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            order[i], order[j] = order[j], order[i]
        return order

    def shuffled(self, items: Sequence[T]) -> List[T]:
        return [items[i] for i in self.permutation(len(items))]
