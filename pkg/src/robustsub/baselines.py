"""Comparison baselines: profile-matched random selection and greedy on the
family average.

Both consume a :class:`SelectionProfile`, the per-round per-part counts of a
reference solution, so their output unions occupy the parts exactly as the
reference did (random selection) or at most as much (greedy on average, which
stops early once gains vanish).
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .greedy import lazy_greedy
from .matroid import PartitionMatroid
from .objectives import SubmodularOracle, average_objective


@dataclass(frozen=True)
class SelectionProfile:
    """Per-round, per-part occupancy counts of a reference solution."""

    counts: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rounds(
        cls, matroid: PartitionMatroid, rounds: Sequence[Iterable[int]]
    ) -> "SelectionProfile":
        if not isinstance(matroid, PartitionMatroid):
            raise NotImplementedError("selection profiles require a partition matroid")
        counts = []
        for members in rounds:
            row = [0] * matroid.num_parts
            for e in members:
                row[matroid.part_of[e]] += 1
            for j, c in enumerate(row):
                if c > matroid.budgets[j]:
                    raise ValueError(
                        f"round holds {c} elements of part {j}, budget is "
                        f"{int(matroid.budgets[j])}"
                    )
            counts.append(tuple(row))
        return cls(counts=tuple(counts))

    @property
    def num_rounds(self) -> int:
        return len(self.counts)


def random_selection(
    profile: SelectionProfile,
    matroid: PartitionMatroid,
    rng: np.random.Generator | int,
) -> frozenset:
    """Union of per-round feasible sets drawn uniformly without replacement,
    matching the profile counts part by part.  One seeded stream, rounds in
    order, parts in index order."""
    if not isinstance(matroid, PartitionMatroid):
        raise NotImplementedError("random selection requires a partition matroid")
    rng = np.random.default_rng(rng)
    union: set[int] = set()
    for row in profile.counts:
        if len(row) != matroid.num_parts:
            raise ValueError("profile and matroid disagree on the number of parts")
        for j, count in enumerate(row):
            part = matroid.part_elements(j)
            if count > len(part):
                raise ValueError(
                    f"profile asks for {count} elements of part {j} of size {len(part)}"
                )
            if count:
                picked = rng.choice(np.array(sorted(part)), size=count, replace=False)
                union.update(int(e) for e in picked)
    return frozenset(union)


def greedy_on_average(
    family: Sequence[SubmodularOracle],
    profile: SelectionProfile,
    matroid: PartitionMatroid,
) -> frozenset:
    """Lazy greedy on the family average, one round per profile row, each
    round constrained to that row's per-part counts and contracted on the
    union of earlier rounds."""
    if not isinstance(matroid, PartitionMatroid):
        raise NotImplementedError("greedy on average requires a partition matroid")
    g = average_objective(family)
    union: frozenset = frozenset()
    for row in profile.counts:
        if len(row) != matroid.num_parts:
            raise ValueError("profile and matroid disagree on the number of parts")
        round_matroid = PartitionMatroid(matroid.part_of, list(row))
        out = lazy_greedy(g, round_matroid, base=union)
        union = union | out.selected
    return union
