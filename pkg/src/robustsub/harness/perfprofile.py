"""Performance profiles: per-algorithm cumulative distribution of metric
ratios to the per-instance best, over a geometric threshold grid."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from .experiment import RunRecord

METRICS = ("time", "calls")

_GRID_STEPS_PER_DOUBLING = 4


@dataclass(frozen=True)
class ProfileTable:
    """Rows of (theta, fraction per algorithm), ready for plotting or CSV."""

    metric: str
    thetas: tuple[float, ...]
    fractions: dict[str, tuple[float, ...]]

    def to_csv(self) -> str:
        algorithms = sorted(self.fractions)
        lines = ["theta," + ",".join(algorithms)]
        for i, theta in enumerate(self.thetas):
            row = [f"{theta:.6g}"] + [f"{self.fractions[a][i]:.6g}" for a in algorithms]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def _metric_value(record: RunRecord, metric: str) -> float:
    if metric == "time":
        return record.wall_ms
    return float(record.family_evals)


def performance_profile(
    records: Sequence[RunRecord],
    metric: str = "calls",
    algorithms: Sequence[str] | None = None,
) -> ProfileTable:
    """Tabulate profile(algorithm, theta) = fraction of instances whose metric
    is within a factor theta of the instance best.

    Instances are (kind, base seed, repetition) triples; every instance must
    carry a clean record for every compared algorithm.  The grid is geometric
    with four steps per doubling, from 1 up to the largest ratio.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")
    if algorithms is None:
        algorithms = sorted({r.algorithm for r in records})
    algorithms = list(algorithms)
    if not algorithms:
        raise ValueError("no algorithms to profile")

    cells: dict[tuple, dict[str, float]] = {}
    for record in records:
        if record.algorithm not in algorithms:
            continue
        if record.error is not None:
            raise ValueError(
                f"record for algorithm {record.algorithm!r}, repetition "
                f"{record.repetition} carries an error: {record.error}"
            )
        key = (record.kind, record.base_seed, record.repetition)
        cells.setdefault(key, {})[record.algorithm] = _metric_value(record, metric)
    if not cells:
        raise ValueError("no records to profile")
    for key, row in cells.items():
        missing = [a for a in algorithms if a not in row]
        if missing:
            raise ValueError(f"instance {key} lacks records for {missing}")

    ratios: dict[str, list[float]] = {a: [] for a in algorithms}
    for row in cells.values():
        best = min(row[a] for a in algorithms)
        for a in algorithms:
            if best > 0.0:
                ratios[a].append(row[a] / best)
            else:
                ratios[a].append(1.0 if row[a] == 0.0 else math.inf)

    finite = [r for rs in ratios.values() for r in rs if math.isfinite(r)]
    top = max(finite, default=1.0)
    thetas = [1.0]
    step = 0
    while thetas[-1] < top:
        step += 1
        thetas.append(2.0 ** (step / _GRID_STEPS_PER_DOUBLING))
    count = len(cells)
    fractions = {
        a: tuple(sum(1 for r in ratios[a] if r <= t) / count for t in thetas)
        for a in algorithms
    }
    return ProfileTable(metric=metric, thetas=tuple(thetas), fractions=fractions)
