"""Matroid feasibility oracles over dense integer ground sets.

Elements are ids ``0..n-1``.  Oracles are immutable after construction and
safe for concurrent read-only queries; per-run mutable feasibility state
lives in :class:`ExtensionState` objects handed out by ``extension_state()``.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from collections.abc import Iterable, Sequence

import numpy as np


class ExtensionState:
    """Mutable scratch tracking one growing independent set.

    ``can_add(e)`` answers whether the tracked set plus ``e`` stays
    independent; ``add(e)`` commits the element.  The generic fallback
    re-queries the oracle; concrete matroids override with O(1) counters.
    """

    def __init__(self, matroid: "MatroidOracle", members: Iterable[int] = ()):
        self._matroid = matroid
        self._members = set(members)

    def can_add(self, e: int) -> bool:
        if e in self._members:
            return False
        return self._matroid.is_independent(self._members | {e})

    def add(self, e: int) -> None:
        if not self.can_add(e):
            raise ValueError(f"adding element {e} breaks independence")
        self._members.add(e)


class MatroidOracle(ABC):
    """Independence oracle interface: feasibility, extension and rank queries."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("ground set must contain at least one element")
        self.n = n

    def _check_element(self, e: int) -> None:
        if not 0 <= e < self.n:
            raise ValueError(f"unknown element id {e} (ground set size {self.n})")

    @abstractmethod
    def is_independent(self, members: Iterable[int]) -> bool:
        """True iff the given element set is feasible."""

    def can_extend(self, members: Iterable[int], e: int) -> bool:
        """True iff ``members + e`` is feasible.  Requires ``e`` not in ``members``."""
        members = set(members)
        self._check_element(e)
        if e in members:
            raise ValueError(f"element {e} already in the set")
        assert self.is_independent(members), "can_extend called on a dependent set"
        return self.is_independent(members | {e})

    @abstractmethod
    def rank(self) -> int:
        """Size of the largest feasible set."""

    def violation_ratio(self, members: Iterable[int]) -> int:
        """Minimum number of feasible sets covering ``members`` (partition only)."""
        raise NotImplementedError(
            f"{type(self).__name__} does not support violation ratios"
        )

    def extension_state(self, members: Iterable[int] = ()) -> ExtensionState:
        return ExtensionState(self, members)


class _PartitionState(ExtensionState):
    """O(1) extension checks via per-part occupancy counters."""

    def __init__(self, matroid: "PartitionMatroid", members: Iterable[int] = ()):
        self._matroid = matroid
        self._members = set(members)
        self._counts = np.zeros(matroid.num_parts, dtype=np.int64)
        for e in self._members:
            self._counts[matroid.part_of[e]] += 1

    def can_add(self, e: int) -> bool:
        if e in self._members:
            return False
        j = self._matroid.part_of[e]
        return self._counts[j] < self._matroid.budgets[j]

    def add(self, e: int) -> None:
        if not self.can_add(e):
            raise ValueError(f"adding element {e} breaks independence")
        self._members.add(e)
        self._counts[self._matroid.part_of[e]] += 1


class PartitionMatroid(MatroidOracle):
    """Feasible sets take at most ``budgets[j]`` elements from part ``j``.

    ``part_of`` maps every element id to its part index; parts must be
    non-empty.  Budgets of zero are allowed (they produce an empty matroid
    on the affected parts).
    """

    def __init__(self, part_of: Sequence[int], budgets: Sequence[int]):
        super().__init__(len(part_of))
        self.part_of = np.asarray(part_of, dtype=np.int64)
        self.budgets = np.asarray(budgets, dtype=np.int64)
        self.num_parts = len(self.budgets)
        if self.part_of.min(initial=0) < 0 or (
            self.num_parts and self.part_of.max(initial=0) >= self.num_parts
        ):
            raise ValueError("part index out of range")
        if np.any(self.budgets < 0):
            raise ValueError("budgets must be non-negative")
        sizes = np.bincount(self.part_of, minlength=self.num_parts)
        if np.any(sizes == 0):
            raise ValueError("every part must contain at least one element")
        self._part_sizes = sizes
        self._parts = [
            [int(e) for e in np.flatnonzero(self.part_of == j)]
            for j in range(self.num_parts)
        ]

    def part_elements(self, j: int) -> list[int]:
        return list(self._parts[j])

    def part_size(self, j: int) -> int:
        return int(self._part_sizes[j])

    def _counts(self, members: Iterable[int]) -> np.ndarray:
        counts = np.zeros(self.num_parts, dtype=np.int64)
        for e in members:
            self._check_element(e)
            counts[self.part_of[e]] += 1
        return counts

    def is_independent(self, members: Iterable[int]) -> bool:
        return bool(np.all(self._counts(members) <= self.budgets))

    def can_extend(self, members: Iterable[int], e: int) -> bool:
        members = set(members)
        self._check_element(e)
        if e in members:
            raise ValueError(f"element {e} already in the set")
        j = self.part_of[e]
        occupied = sum(1 for x in members if self.part_of[x] == j)
        return occupied < self.budgets[j]

    def rank(self) -> int:
        return int(self.budgets.sum())

    def violation_ratio(self, members: Iterable[int]) -> int:
        counts = self._counts(members)
        ratio = 0
        for j in range(self.num_parts):
            if counts[j] == 0:
                continue
            if self.budgets[j] == 0:
                raise ValueError(f"part {j} has budget 0 but holds elements")
            ratio = max(ratio, math.ceil(counts[j] / self.budgets[j]))
        return ratio

    def extension_state(self, members: Iterable[int] = ()) -> ExtensionState:
        return _PartitionState(self, members)


class UniformMatroid(PartitionMatroid):
    """Cardinality constraint |S| <= capacity, i.e. a one-part partition."""

    def __init__(self, n: int, capacity: int):
        if capacity < 0:
            raise ValueError("capacity must be non-negative")
        super().__init__([0] * n, [capacity])
        self.capacity = capacity


def random_partition_matroid(
    n: int, q: int, budget: int, rng: np.random.Generator
) -> PartitionMatroid:
    """Partition of ``0..n-1`` into ``q`` parts of near-equal size with a
    common budget; part composition is a seeded uniform shuffle of V."""
    if not 1 <= q <= n:
        raise ValueError("need 1 <= q <= n")
    order = rng.permutation(n)
    part_of = np.empty(n, dtype=np.int64)
    for j, chunk in enumerate(np.array_split(order, q)):
        part_of[chunk] = j
    return PartitionMatroid(part_of, [budget] * q)
