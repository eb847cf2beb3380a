"""Exhaustive reference implementations for desk-scale verification.

These are the independent counterparts to the solvers: enumeration with
downward-closed pruning, exact single and max-min optima, and a full
monotonicity/submodularity checker.  Guards keep them at desk scale; pass a
larger ``limit`` explicitly to override.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .matroid import MatroidOracle
from .objectives import SubmodularOracle

ENUMERATION_LIMIT = 25
PROPERTY_LIMIT = 12


@dataclass(frozen=True)
class ExactResult:
    """Optimum found by exhaustive search."""

    optimal_set: frozenset
    optimal_value: float
    enumerated: int


def enumerate_independent_sets(
    matroid: MatroidOracle, limit: int = ENUMERATION_LIMIT
) -> Iterator[frozenset]:
    """Yield every feasible set, never extending a dependent one.

    Downward closure makes increasing-id depth-first search complete: any
    feasible set is reachable through its own sorted prefixes.
    """
    n = matroid.n
    if n > limit:
        raise ValueError(
            f"ground set size {n} exceeds the enumeration guard {limit}; "
            "pass a larger limit to override"
        )

    def walk(members: frozenset, start: int) -> Iterator[frozenset]:
        yield members
        state = matroid.extension_state(members)
        for e in range(start, n):
            if state.can_add(e):
                yield from walk(members | {e}, e + 1)

    return walk(frozenset(), 0)


def brute_force_single_opt(
    g: SubmodularOracle, matroid: MatroidOracle, limit: int = ENUMERATION_LIMIT
) -> ExactResult:
    """Exact max of ``g`` over feasible sets; ties go to the lexicographically
    least sorted element tuple."""
    best_set = frozenset()
    best_val = g.value(best_set)
    best_key = ()
    count = 0
    for members in enumerate_independent_sets(matroid, limit):
        count += 1
        val = g.value(members)
        key = tuple(sorted(members))
        if val > best_val or (val == best_val and key < best_key):
            best_set, best_val, best_key = members, val, key
    return ExactResult(best_set, best_val, count)


def brute_force_robust_opt(
    family: Sequence[SubmodularOracle],
    matroid: MatroidOracle,
    limit: int = ENUMERATION_LIMIT,
) -> ExactResult:
    """Exact max-min over feasible sets for a family of objectives."""
    if not family:
        raise ValueError("family must be non-empty")
    best_set = frozenset()
    best_val = min(f.value(best_set) for f in family)
    best_key = ()
    count = 0
    for members in enumerate_independent_sets(matroid, limit):
        count += 1
        val = min(f.value(members) for f in family)
        key = tuple(sorted(members))
        if val > best_val or (val == best_val and key < best_key):
            best_set, best_val, best_key = members, val, key
    return ExactResult(best_set, best_val, count)


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of the exhaustive monotone+submodular check."""

    ok: bool
    kind: str | None = None  # "monotone" or "submodular"
    small: frozenset | None = None  # A
    large: frozenset | None = None  # B with A subset of B
    element: int | None = None
    gain_small: float | None = None
    gain_large: float | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_monotone_submodular(
    g: SubmodularOracle, n: int | None = None, limit: int = PROPERTY_LIMIT, tol: float = 1e-9
) -> PropertyReport:
    """Check g(A) <= g(B) and diminishing gains for every A subset B, e not in B.

    Returns the first violating triple with both gains.  Values are cached per
    subset so the sweep costs 2^n evaluations plus O(3^n * n) comparisons.
    """
    if n is None:
        n = g.n
    if n > limit:
        raise ValueError(
            f"ground set size {n} exceeds the property-check guard {limit}; "
            "pass a larger limit to override"
        )
    members_of = [frozenset(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)]
    val = [g.value(members_of[mask]) for mask in range(1 << n)]

    for b_mask in range(1 << n):
        a_mask = b_mask
        while True:  # all submasks of b_mask, including itself and 0
            if val[a_mask] > val[b_mask] + tol:
                return PropertyReport(
                    False, "monotone", members_of[a_mask], members_of[b_mask],
                    None, val[a_mask], val[b_mask],
                )
            for e in range(n):
                bit = 1 << e
                if b_mask & bit:
                    continue
                gain_a = val[a_mask | bit] - val[a_mask]
                gain_b = val[b_mask | bit] - val[b_mask]
                if gain_a < gain_b - tol:
                    return PropertyReport(
                        False, "submodular", members_of[a_mask], members_of[b_mask],
                        e, gain_a, gain_b,
                    )
            if a_mask == 0:
                break
            a_mask = (a_mask - 1) & b_mask
    return PropertyReport(True)
