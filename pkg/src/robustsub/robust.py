"""Bi-criteria driver: binary search over the target level with truncated
surrogates, per-round guarantee checks, and certified bound updates.

For each guess ``gamma`` the driver maximizes the truncated family average
with up to ``rounds_budget`` rounds of the chosen subroutine.  A round that
falls short of its guaranteed fraction certifies the guess is above the
optimum (upper bound update); a union whose worst family value reaches the
acceptance threshold becomes a candidate (lower bound update).  The search
stops when the bracket is tight relative to the upper bound.
"""

from __future__ import annotations

import math
import time
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .greedy import (
    RoundOutput,
    lazy_greedy,
    naive_greedy,
    stochastic_greedy_round,
    threshold_greedy_round,
)
from .matroid import MatroidOracle
from .objectives import SubmodularOracle, TruncatedAverage

ALGORITHMS = ("prev-e-g", "e-g", "e-thg", "e-stochg")

MAX_SEARCH_ITERATIONS = 64


def _check_algorithm(algorithm: str) -> str:
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")
    return algorithm


def rounds_budget(k: int, eps: float, algorithm: str, delta: float = 0.1) -> int:
    """Number of rounds needed to force the surrogate within eps/(2k) of the
    guess: ceil(log(2k/eps) / log(2 - delta)) for threshold descent, the
    base-2 variant for the plain greedy subroutines."""
    _check_algorithm(algorithm)
    if k < 1:
        raise ValueError("need at least one objective")
    if eps <= 0:
        raise ValueError("eps must be positive")
    target = 2.0 * k / eps
    if algorithm == "e-thg":
        if not 0.0 < delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")
        budget = math.ceil(math.log(target) / math.log(2.0 - delta))
    else:
        budget = math.ceil(math.log2(target))
    return max(1, budget)


def alpha_factor(algorithm: str, tau: int, delta: float = 0.1) -> float:
    """Guaranteed fraction of the guess after ``tau`` rounds."""
    _check_algorithm(algorithm)
    if tau < 1:
        raise ValueError("round index starts at 1")
    if algorithm == "e-thg":
        return 1.0 - (2.0 - delta) ** -tau
    return 1.0 - 2.0**-tau


def check_round_guarantee(
    union_value: float, gamma: float, tau: int, algorithm: str, delta: float = 0.1
) -> bool:
    """True iff the union meets its guaranteed fraction of the guess.  A False
    certifies that no feasible set reaches ``gamma``, so the caller may lower
    the upper bound to ``gamma``."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    return union_value >= alpha_factor(algorithm, tau, delta) * gamma


@dataclass
class RobustInstance:
    """A family of normalized monotone submodular objectives under one matroid,
    plus the solver parameters."""

    family: Sequence[SubmodularOracle]
    matroid: MatroidOracle
    eps: float = 0.01
    delta: float = 0.1
    eps_prime: float = 0.1
    k_prime: int = 3

    def __post_init__(self):
        if not self.family:
            raise ValueError("family must be non-empty")
        if not 0.0 < self.eps < 1.0:
            raise ValueError("eps must lie in (0, 1)")
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")
        if not 0.0 < self.eps_prime < 1.0:
            raise ValueError("eps_prime must lie in (0, 1)")
        if not 1 <= self.k_prime <= len(self.family):
            raise ValueError("need 1 <= k_prime <= k")
        for f in self.family:
            if f.n != self.matroid.n:
                raise ValueError("family and matroid disagree on the ground set size")

    @property
    def k(self) -> int:
        return len(self.family)


@dataclass(frozen=True)
class BoundsInit:
    lb: float
    ub: float
    witness: frozenset
    witness_value: float


def initialize_bounds(instance: RobustInstance) -> BoundsInit:
    """Bracket the optimum by greedy runs on a sub-collection.

    Greedy is a 1/2-approximation per objective, so twice the worst single
    objective value upper-bounds the optimum; the best feasible witness's
    worst family value lower-bounds it.
    """
    family = instance.family
    outs = [lazy_greedy(family[i], instance.matroid) for i in range(instance.k_prime)]
    ub = 2.0 * min(out.value for out in outs)
    lb = 0.0
    witness: frozenset = frozenset()
    for out in outs:
        worst = min(f.value(out.selected) for f in family)
        if worst > lb:
            lb, witness = worst, out.selected
    return BoundsInit(lb=lb, ub=ub, witness=witness, witness_value=lb)


@dataclass(frozen=True)
class GammaTrace:
    """One binary-search iteration: the guess, how far the rounds got, the
    verdict, the union's surrogate-free worst value, and the bracket after
    the update."""

    gamma: float
    tau: int
    verdict: str  # accepted | accepted-saturated | rejected-guarantee |
    #               rejected-saturated | rejected-exhausted
    union_value: float
    lb: float
    ub: float


@dataclass
class SolveStats:
    algorithm: str
    seed: int
    rounds_budget: int
    surrogate_evals: int = 0
    family_evals: int = 0
    wall_ms: float = 0.0
    outer_iterations: int = 0
    lazy: bool = True
    early_stop: bool = True
    acceptance_slack: str = "half"


@dataclass
class BiCriteriaResult:
    """Best accepted union across the whole search with its audit trail."""

    rounds: list[frozenset]
    union: frozenset
    value: float  # min over the family at the union; equals lb when accepted
    lb: float
    ub: float
    lb_init: float
    ub_init: float
    nu: int | None
    gamma_history: list[GammaTrace]
    stats: SolveStats


def _min_family_value(family, members) -> float:
    return min(f.value(members) for f in family)


def bicriteria_solve(
    instance: RobustInstance,
    algorithm: str,
    seed: int = 0,
    *,
    lazy: bool = True,
    early_stop: bool = True,
    acceptance_slack: str = "half",
) -> BiCriteriaResult:
    """Run the full binary search and return the best accepted union.

    ``acceptance_slack`` picks the candidate threshold: "half" accepts a union
    whose worst family value reaches (1 - eps/2) * gamma (the factor the
    end-to-end guarantee needs), "full" relaxes it to (1 - eps) * gamma.
    The ``prev-e-g`` mode is plain extended greedy with neither lazy
    evaluation nor any early stopping, the unimproved comparator.
    """
    _check_algorithm(algorithm)
    if acceptance_slack not in ("half", "full"):
        raise ValueError("acceptance_slack must be 'half' or 'full'")
    if algorithm == "prev-e-g":
        lazy = False
        early_stop = False
    started = time.perf_counter()
    rng = np.random.default_rng(seed)
    family = list(instance.family)
    matroid = instance.matroid
    eps, delta = instance.eps, instance.delta
    slack = eps / 2.0 if acceptance_slack == "half" else eps
    budget = rounds_budget(instance.k, eps, algorithm, delta)
    family_evals0 = sum(f.evals for f in family)

    stats = SolveStats(
        algorithm=algorithm,
        seed=seed,
        rounds_budget=budget,
        lazy=lazy,
        early_stop=early_stop,
        acceptance_slack=acceptance_slack,
    )

    def run_round(g: TruncatedAverage, base: frozenset) -> RoundOutput:
        if algorithm == "e-thg":
            return threshold_greedy_round(g, matroid, delta, base)
        if algorithm == "e-stochg":
            return stochastic_greedy_round(g, matroid, instance.eps_prime, rng, base)
        if lazy:
            return lazy_greedy(g, matroid, base)
        return naive_greedy(g, matroid, base)

    bounds = initialize_bounds(instance)
    lb, ub = bounds.lb, bounds.ub
    history: list[GammaTrace] = []
    if bounds.witness_value > 0.0:
        best_rounds: list[frozenset] = [bounds.witness]
        best_union, best_value = bounds.witness, bounds.witness_value
    else:
        best_rounds, best_union, best_value = [], frozenset(), 0.0

    while ub > 0.0 and (ub - lb) / ub > 2.0 * eps:
        stats.outer_iterations += 1
        if stats.outer_iterations > MAX_SEARCH_ITERATIONS:
            raise RuntimeError(
                f"binary search failed to converge within {MAX_SEARCH_ITERATIONS} iterations"
            )
        gamma = (ub + lb) / 2.0
        g = TruncatedAverage(family, gamma)
        threshold = (1.0 - slack) * gamma
        union: frozenset = frozenset()
        rounds: list[frozenset] = []
        verdict = None
        tau_reached = 0
        union_value = 0.0

        for tau in range(1, budget + 1):
            tau_reached = tau
            out = run_round(g, union)
            if early_stop and out.max_gain <= 0.0 and not out.selected:
                # Surrogate saturated: nothing can improve it, decide now.
                union_value = _min_family_value(family, union) if union else 0.0
                if union_value >= threshold:
                    verdict = "accepted-saturated"
                else:
                    verdict = "rejected-saturated"
                break
            if out.selected:
                rounds.append(out.selected)
                union = union | out.selected
            if not early_stop:
                continue
            if not check_round_guarantee(g.value(union), gamma, tau, algorithm, delta):
                verdict = "rejected-guarantee"
                union_value = _min_family_value(family, union)
                break
            union_value = _min_family_value(family, union)
            if union_value >= threshold:
                verdict = "accepted"
                break

        if verdict is None:
            union_value = _min_family_value(family, union) if union else 0.0
            if union_value >= threshold:
                verdict = "accepted"
            else:
                # With the round budget exhausted the guess is unreachable.
                verdict = "rejected-exhausted"

        if verdict.startswith("accepted"):
            lb = max(lb, union_value)
            if union_value > best_value:
                best_rounds, best_union, best_value = list(rounds), union, union_value
        else:
            ub = gamma
        history.append(GammaTrace(gamma, tau_reached, verdict, union_value, lb, ub))
        stats.surrogate_evals += g.evals

    stats.family_evals = sum(f.evals for f in family) - family_evals0
    stats.wall_ms = (time.perf_counter() - started) * 1000.0
    try:
        nu = matroid.violation_ratio(best_union)
    except NotImplementedError:
        nu = None
    return BiCriteriaResult(
        rounds=best_rounds,
        union=best_union,
        value=best_value,
        lb=lb,
        ub=ub,
        lb_init=bounds.lb,
        ub_init=bounds.ub,
        nu=nu,
        gamma_history=history,
        stats=stats,
    )
