"""Greedy engines: threshold descent, lazy and naive greedy, and stochastic
sampling for partition constraints, all in single-round and multi-round form.

Shared conventions (all deterministic given inputs and seed):

* rounds restart from an empty set and treat ``base`` (the union of earlier
  rounds) as already selected: gains are measured against ``base | S`` and
  elements of ``base`` are skipped outright since their gain is zero;
* ties break to the lowest element id;
* objective comparisons are exact float comparisons, no epsilon fuzzing;
* every marginal evaluation goes through a single :class:`~.objectives.Cursor`
  per round, so the oracle's counter is the evaluation count.
"""

from __future__ import annotations

import heapq
import math
import time
from collections.abc import Callable, Iterable, Iterator

import numpy as np

from .matroid import MatroidOracle, PartitionMatroid
from .objectives import SubmodularOracle

# Per-round callback: (round index starting at 1, RoundOutput, union so far).
# A truthy return halts after the current round.
RoundCallback = Callable[[int, "RoundOutput", frozenset], bool]


class ThresholdSchedule:
    """Geometric acceptance thresholds from ``peak`` down to ``(delta/n)*peak``.

    The length is fixed by the closed form floor(log(n/delta)/-log(1-delta))+1
    and the values are produced by repeated multiplication, so the ratio of
    consecutive thresholds is exactly ``1 - delta``.  A non-positive peak gives
    an empty schedule.
    """

    def __init__(self, peak: float, delta: float, n: int):
        if not 0.0 < delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")
        if n < 1:
            raise ValueError("ground set must contain at least one element")
        self.peak = float(peak)
        self.delta = float(delta)
        self.n = n

    def __len__(self) -> int:
        if self.peak <= 0.0:
            return 0
        return math.floor(math.log(self.n / self.delta) / -math.log(1.0 - self.delta)) + 1

    def __iter__(self) -> Iterator[float]:
        w = self.peak
        ratio = 1.0 - self.delta
        for _ in range(len(self)):
            yield w
            w *= ratio


class RoundOutput:
    """One feasible set chosen by a round, with its run statistics."""

    __slots__ = ("selected", "value", "max_gain", "evals", "passes", "seconds")

    def __init__(self, selected, value, max_gain, evals, passes, seconds):
        self.selected = frozenset(selected)
        self.value = value  # objective value of base | selected
        self.max_gain = max_gain  # peak marginal seen at the start of the round
        self.evals = evals
        self.passes = passes
        self.seconds = seconds

    def __repr__(self):
        return (
            f"RoundOutput(selected={sorted(self.selected)}, value={self.value:.6g}, "
            f"evals={self.evals}, passes={self.passes})"
        )


def _round_candidates(matroid, base):
    """Ids outside ``base`` whose singleton is feasible; the rest can never
    enter any round."""
    state = matroid.extension_state()
    return [e for e in range(matroid.n) if e not in base and state.can_add(e)]


def threshold_greedy_round(
    g: SubmodularOracle,
    matroid: MatroidOracle,
    delta: float,
    base: Iterable[int] = (),
) -> RoundOutput:
    """One threshold-descent pass structure: compute the peak gain, then sweep
    the ground set once per threshold, adding any feasible element whose gain
    meets the current threshold."""
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    if g.n != matroid.n:
        raise ValueError("objective and matroid disagree on the ground set size")
    start = time.perf_counter()
    base = frozenset(base)
    evals0 = g.evals
    cur = g.cursor(base)
    candidates = _round_candidates(matroid, base)

    peak = 0.0
    for e in candidates:
        peak = max(peak, cur.gain(e))
    if peak <= 0.0:
        return RoundOutput(
            frozenset(), cur.current_value, peak, g.evals - evals0, 0,
            time.perf_counter() - start,
        )

    state = matroid.extension_state()
    selected = set()
    passes = 0
    for w in ThresholdSchedule(peak, delta, matroid.n):
        passes += 1
        for e in candidates:
            if e in selected or not state.can_add(e):
                continue
            if cur.gain(e) >= w:
                cur.add(e)
                state.add(e)
                selected.add(e)
    return RoundOutput(
        selected, cur.current_value, peak, g.evals - evals0, passes,
        time.perf_counter() - start,
    )


def lazy_greedy(
    g: SubmodularOracle,
    matroid: MatroidOracle,
    base: Iterable[int] = (),
) -> RoundOutput:
    """Classic greedy with stale-bound reuse.

    The queue keeps (negated cached gain, id, staleness stamp); by
    submodularity a cached gain only ever overestimates, so a popped entry
    evaluated at the current stamp is the true argmax.  Output is identical
    to :func:`naive_greedy` under the (largest gain, lowest id) rule.
    """
    if g.n != matroid.n:
        raise ValueError("objective and matroid disagree on the ground set size")
    start = time.perf_counter()
    base = frozenset(base)
    evals0 = g.evals
    cur = g.cursor(base)
    state = matroid.extension_state()

    heap = []
    peak = 0.0
    for e in _round_candidates(matroid, base):
        gain = cur.gain(e)
        peak = max(peak, gain)
        heap.append((-gain, e, 0))
    heapq.heapify(heap)

    selected = set()
    adds = 0
    while heap:
        neg, e, stamp = heapq.heappop(heap)
        if -neg <= 0.0:
            break  # cached bounds only overestimate, so nothing is left
        if not state.can_add(e):
            continue  # infeasible now, hence forever
        if stamp != adds:
            heapq.heappush(heap, (-cur.gain(e), e, adds))
            continue
        cur.add(e)
        state.add(e)
        selected.add(e)
        adds += 1
    return RoundOutput(
        selected, cur.current_value, peak, g.evals - evals0, adds + 1,
        time.perf_counter() - start,
    )


def naive_greedy(
    g: SubmodularOracle,
    matroid: MatroidOracle,
    base: Iterable[int] = (),
) -> RoundOutput:
    """Reference greedy: full re-evaluation sweep per addition."""
    if g.n != matroid.n:
        raise ValueError("objective and matroid disagree on the ground set size")
    start = time.perf_counter()
    base = frozenset(base)
    evals0 = g.evals
    cur = g.cursor(base)
    state = matroid.extension_state()
    candidates = _round_candidates(matroid, base)

    selected = set()
    peak = None
    passes = 0
    while True:
        passes += 1
        best_gain, best_e = 0.0, None
        for e in candidates:
            if e in selected or not state.can_add(e):
                continue
            gain = cur.gain(e)
            if best_e is None or gain > best_gain:
                best_gain, best_e = gain, e
        if peak is None:
            peak = best_gain if best_e is not None else 0.0
        if best_e is None or best_gain <= 0.0:
            break
        cur.add(best_e)
        state.add(best_e)
        selected.add(best_e)
    return RoundOutput(
        selected, cur.current_value, peak, g.evals - evals0, passes,
        time.perf_counter() - start,
    )


def stochastic_sample_size(part_size: int, budget: int, eps_prime: float) -> int:
    """Per-part sample size ceil((n_j / b_j) * ln(1 / eps'))."""
    if not 0.0 < eps_prime < 1.0:
        raise ValueError("eps_prime must lie in (0, 1)")
    if budget < 1:
        raise ValueError("budget must be positive")
    return math.ceil(part_size / budget * math.log(1.0 / eps_prime))


def stochastic_greedy_round(
    g: SubmodularOracle,
    matroid: PartitionMatroid,
    eps_prime: float,
    rng: np.random.Generator,
    base: Iterable[int] = (),
) -> RoundOutput:
    """Fill one feasible set to a basis, each step picking the best element of
    a uniform without-replacement sample from every unfilled part."""
    if not isinstance(matroid, PartitionMatroid):
        raise NotImplementedError("stochastic greedy requires a partition matroid")
    if not 0.0 < eps_prime < 1.0:
        raise ValueError("eps_prime must lie in (0, 1)")
    if g.n != matroid.n:
        raise ValueError("objective and matroid disagree on the ground set size")
    start = time.perf_counter()
    base = frozenset(base)
    evals0 = g.evals
    cur = g.cursor(base)

    budgets = matroid.budgets
    counts = [0] * matroid.num_parts
    remaining = [
        sorted(e for e in matroid.part_elements(j) if e not in base)
        for j in range(matroid.num_parts)
    ]
    sizes = [
        stochastic_sample_size(matroid.part_size(j), int(budgets[j]), eps_prime)
        if budgets[j] > 0
        else 0
        for j in range(matroid.num_parts)
    ]

    selected = set()
    peak = None
    while True:
        batch = []
        for j in range(matroid.num_parts):
            if counts[j] >= budgets[j] or not remaining[j]:
                continue
            take = min(sizes[j], len(remaining[j]))
            picked = rng.choice(np.array(remaining[j]), size=take, replace=False)
            batch.extend(int(e) for e in picked)
        if not batch:
            break
        best_gain, best_e = -math.inf, None
        for e in sorted(batch):
            gain = cur.gain(e)
            if gain > best_gain:
                best_gain, best_e = gain, e
        if peak is None:
            peak = best_gain
        cur.add(best_e)
        selected.add(best_e)
        j = int(matroid.part_of[best_e])
        counts[j] += 1
        remaining[j].remove(best_e)
    return RoundOutput(
        selected, cur.current_value, 0.0 if peak is None else peak,
        g.evals - evals0, len(selected), time.perf_counter() - start,
    )


def _extended(round_fn, num_rounds: int, callback: RoundCallback | None):
    if num_rounds < 1:
        raise ValueError("need at least one round")
    rounds = []
    union = frozenset()
    for tau in range(1, num_rounds + 1):
        out = round_fn(union)
        rounds.append(out)
        union = union | out.selected
        if callback is not None and callback(tau, out, union):
            break
        if not out.selected:
            break  # saturated: later rounds cannot make progress
    return rounds


def extended_threshold_greedy(
    g: SubmodularOracle,
    matroid: MatroidOracle,
    delta: float,
    num_rounds: int,
    callback: RoundCallback | None = None,
) -> list[RoundOutput]:
    """Threshold-descent rounds on the residual objective; the union of the
    returned feasible sets carries the multi-round approximation factor."""
    return _extended(
        lambda base: threshold_greedy_round(g, matroid, delta, base),
        num_rounds,
        callback,
    )


def extended_greedy(
    g: SubmodularOracle,
    matroid: MatroidOracle,
    num_rounds: int,
    callback: RoundCallback | None = None,
    lazy: bool = True,
) -> list[RoundOutput]:
    """Greedy rounds on the residual objective; ``lazy=False`` switches to the
    full-sweep reference implementation."""
    round_fn = lazy_greedy if lazy else naive_greedy
    return _extended(
        lambda base: round_fn(g, matroid, base),
        num_rounds,
        callback,
    )


def extended_stochastic_greedy(
    g: SubmodularOracle,
    matroid: PartitionMatroid,
    eps_prime: float,
    num_rounds: int,
    rng: np.random.Generator | int,
    callback: RoundCallback | None = None,
) -> list[RoundOutput]:
    """Stochastic sampling rounds for partition matroids (heuristic: fills
    each round to a basis, no per-round approximation factor)."""
    rng = np.random.default_rng(rng)
    return _extended(
        lambda base: stochastic_greedy_round(g, matroid, eps_prime, rng, base),
        num_rounds,
        callback,
    )
