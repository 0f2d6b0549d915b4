"""Ordered splits of an index range into labelled subsets of fixed sizes."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .errors import CardinalityError


@dataclass(frozen=True)
class LabeledPartition:
    n: int
    subsets: tuple  # tuple of tuples of increasing indices
    labels: tuple = ()

    @property
    def cardinalities(self) -> tuple:
        return tuple(len(s) for s in self.subsets)

    def __getitem__(self, key):
        if isinstance(key, str):
            return self.subsets[self.labels.index(key)]
        return self.subsets[key]

    def pick(self, values: Sequence) -> tuple:
        """Values of ``values`` split along this partition, one tuple per subset."""
        return tuple(tuple(values[i] for i in s) for s in self.subsets)


def _splits(pool: tuple, cards: Sequence[int]):
    if len(cards) == 1:
        yield (pool,)
        return
    k = cards[0]
    for first in combinations(pool, k):
        chosen = set(first)
        rest = tuple(i for i in pool if i not in chosen)
        for tail in _splits(rest, cards[1:]):
            yield (first,) + tail


def enumerate_partitions(n: int, cards: Sequence[int], labels: Sequence[str] = ()) -> Iterator[LabeledPartition]:
    """Yield every split of ``range(n)`` into subsets of sizes ``cards``.

    Order is lexicographic on the first subset, then the second, etc.  Every
    subset is in increasing order.  At most four subsets are supported.
    """
    cards = tuple(int(k) for k in cards)
    if any(k < 0 for k in cards) or sum(cards) != n:
        raise CardinalityError(f"cardinalities {cards} do not sum to {n}")
    if not 1 <= len(cards) <= 4:
        raise CardinalityError("between one and four subsets are supported")
    labels = tuple(labels)
    if labels and len(labels) != len(cards):
        raise CardinalityError("one label per subset")
    for subsets in _splits(tuple(range(n)), cards):
        yield LabeledPartition(n, subsets, labels)


def all_two_splits(n: int) -> Iterator[LabeledPartition]:
    """Two-subset splits of every size, first-subset size 0..n."""
    for k in range(n + 1):
        yield from enumerate_partitions(n, (k, n - k))


def inversions(seq: Sequence[int]) -> int:
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def partition_sign(p: LabeledPartition) -> int:
    """Parity of the permutation taking the concatenated subsets back to order."""
    if len(p.subsets) != 2:
        raise CardinalityError("sign is defined for two-subset partitions")
    return -1 if inversions(p.subsets[0] + p.subsets[1]) % 2 else 1
