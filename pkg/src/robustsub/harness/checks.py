"""Built-in verification battery for the ``verify`` CLI subcommand: exercises
the exhaustive oracles and the solvers' stated properties on a small seeded
corpus and reports one pass/fail line per check."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..exact import (
    brute_force_robust_opt,
    brute_force_single_opt,
    enumerate_independent_sets,
    verify_monotone_submodular,
)
from ..greedy import extended_threshold_greedy, lazy_greedy, naive_greedy, threshold_greedy_round
from ..matroid import random_partition_matroid
from ..objectives import PerturbationSpec, TruncatedAverage, perturb
from ..robust import RobustInstance, bicriteria_solve
from .instances import derive_rng, synthetic_coverage


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    detail: str


def _random_instance(seed, n=8, q=2, b=1, k=3, lam=2):
    rng = derive_rng(seed, 0, 0)
    base = synthetic_coverage(n, rng, universe=n)
    spec = PerturbationSpec.draw(n, k, lam, rng)
    family = [perturb(base, spec, i) for i in range(k)]
    matroid = random_partition_matroid(n, q, b, rng)
    return family, matroid


def check_downward_closure(seed=0, trials=200) -> CheckOutcome:
    rng = derive_rng(seed, 1)
    for _ in range(trials):
        n = int(rng.integers(2, 11))
        m = random_partition_matroid(n, int(rng.integers(1, n + 1)), int(rng.integers(0, 3)), rng)
        members = [int(e) for e in rng.choice(n, size=int(rng.integers(0, n + 1)), replace=False)]
        if m.is_independent(members):
            for r in range(len(members)):
                for sub in itertools.combinations(members, r):
                    if not m.is_independent(sub):
                        return CheckOutcome(
                            "downward-closure", False, f"subset {sub} of {members} dependent"
                        )
    return CheckOutcome("downward-closure", True, f"{trials} random subsets")


def check_enumeration(seed=0, trials=20) -> CheckOutcome:
    rng = derive_rng(seed, 2)
    for _ in range(trials):
        n = int(rng.integers(2, 9))
        m = random_partition_matroid(n, int(rng.integers(1, n + 1)), int(rng.integers(0, 3)), rng)
        pruned = set(enumerate_independent_sets(m))
        naive = {
            frozenset(c)
            for r in range(n + 1)
            for c in itertools.combinations(range(n), r)
            if m.is_independent(c)
        }
        if pruned != naive:
            return CheckOutcome("enumeration", False, "pruned walk disagrees with 2^n filter")
    return CheckOutcome("enumeration", True, f"{trials} matroids cross-checked")


def check_objective_properties(seed=0) -> CheckOutcome:
    family, _ = _random_instance(seed, n=6)
    for i, f in enumerate(family):
        report = verify_monotone_submodular(f, 6)
        if not report.ok:
            return CheckOutcome("objective-properties", False, f"objective {i}: {report.kind}")
    surrogate = TruncatedAverage(family, gamma=2.0)
    report = verify_monotone_submodular(surrogate, 6)
    if not report.ok:
        return CheckOutcome("objective-properties", False, f"surrogate: {report.kind}")
    return CheckOutcome("objective-properties", True, "family and surrogate at n=6")


def check_lazy_matches_naive(seed=0, trials=40) -> CheckOutcome:
    rng = derive_rng(seed, 3)
    for t in range(trials):
        n = int(rng.integers(3, 16))
        g = synthetic_coverage(n, rng)
        m = random_partition_matroid(n, int(rng.integers(1, 4)), int(rng.integers(1, 4)), rng)
        if lazy_greedy(g, m).selected != naive_greedy(g, m).selected:
            return CheckOutcome("lazy-matches-naive", False, f"trial {t} diverged")
    return CheckOutcome("lazy-matches-naive", True, f"{trials} seeded instances")


def check_single_round_factor(seed=0, trials=40, delta=0.1) -> CheckOutcome:
    rng = derive_rng(seed, 4)
    factor = (1.0 - delta) / (2.0 - delta)
    for t in range(trials):
        n = int(rng.integers(3, 11))
        g = synthetic_coverage(n, rng)
        m = random_partition_matroid(n, int(rng.integers(1, 4)), int(rng.integers(1, 3)), rng)
        opt = brute_force_single_opt(g, m).optimal_value
        got = g.value(threshold_greedy_round(g, m, delta).selected)
        if got < factor * opt - 1e-9:
            return CheckOutcome(
                "single-round-factor", False, f"trial {t}: {got:.4f} < {factor:.4f}*{opt:.4f}"
            )
    return CheckOutcome("single-round-factor", True, f"{trials} instances vs brute force")


def check_multi_round_factor(seed=0, trials=25, delta=0.1) -> CheckOutcome:
    rng = derive_rng(seed, 5)
    for t in range(trials):
        n = int(rng.integers(3, 11))
        g = synthetic_coverage(n, rng)
        m = random_partition_matroid(n, int(rng.integers(1, 4)), int(rng.integers(1, 3)), rng)
        opt = brute_force_single_opt(g, m).optimal_value
        for rounds in (1, 2, 3):
            outs = extended_threshold_greedy(g, m, delta, rounds)
            union = frozenset().union(*[o.selected for o in outs])
            bound = (1.0 - (1.0 / (2.0 - delta)) ** rounds) * opt
            if g.value(union) < bound - 1e-9:
                return CheckOutcome(
                    "multi-round-factor", False, f"trial {t} rounds {rounds} below bound"
                )
    return CheckOutcome("multi-round-factor", True, f"{trials} instances, rounds 1..3")


def check_guarantee_soundness(seed=0, trials=15) -> CheckOutcome:
    """Audit every upper-bound update against brute force: a rejected guess
    must exceed the exact optimum, and the final value must clear it."""
    for t in range(trials):
        family, matroid = _random_instance(seed * 1000 + t)
        opt = brute_force_robust_opt(family, matroid).optimal_value
        fam, mat = _random_instance(seed * 1000 + t)
        inst = RobustInstance(fam, mat, eps=0.1, delta=0.1, k_prime=1)
        result = bicriteria_solve(inst, "e-thg", seed=t)
        for trace in result.gamma_history:
            if trace.verdict.startswith("rejected") and opt >= trace.gamma:
                return CheckOutcome(
                    "guarantee-soundness", False,
                    f"trial {t}: rejected gamma {trace.gamma:.4f} <= OPT {opt:.4f}",
                )
        if result.value < (1.0 - 0.1) * opt - 1e-9:
            return CheckOutcome(
                "guarantee-soundness", False, f"trial {t}: final value below (1-eps)*OPT"
            )
    return CheckOutcome("guarantee-soundness", True, f"{trials} robust instances")


CHECKS = (
    check_downward_closure,
    check_enumeration,
    check_objective_properties,
    check_lazy_matches_naive,
    check_single_round_factor,
    check_multi_round_factor,
    check_guarantee_soundness,
)


def run_verification(seed: int = 0) -> list[CheckOutcome]:
    return [check(seed) for check in CHECKS]
