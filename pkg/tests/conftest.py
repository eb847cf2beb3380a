"""Shared corpus builders for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from robustsub import (
    PartitionMatroid,
    PerturbationSpec,
    RobustInstance,
    perturb,
    random_partition_matroid,
)
from robustsub.harness import derive_rng, synthetic_coverage


def coverage_square():
    """The four-element coverage example used throughout: element covers are
    {a,b}, {b}, {c}, {a,c}."""
    from robustsub import CoverageFunction

    return CoverageFunction([{"a", "b"}, {"b"}, {"c"}, {"a", "c"}])


def square_partition():
    """Two parts {0,1} and {2,3}, budget 1 each."""
    return PartitionMatroid([0, 0, 1, 1], [1, 1])


def random_instance(seed: int, max_n: int = 10):
    """One seeded coverage instance with a random partition matroid."""
    rng = derive_rng(seed, 100)
    n = int(rng.integers(4, max_n + 1))
    g = synthetic_coverage(n, rng, universe=max(4, n))
    q = int(rng.integers(1, 4))
    b = int(rng.integers(1, 3))
    matroid = random_partition_matroid(n, q, b, rng)
    return g, matroid


def robust_instance(seed: int, k: int = 3, max_n: int = 10, eps: float = 0.1):
    """One seeded robust instance: k perturbed copies of a random coverage
    function under a random partition matroid.  A fresh build per call so
    oracle counters start at zero."""
    rng = derive_rng(seed, 200)
    n = int(rng.integers(6, max_n + 1))
    base = synthetic_coverage(n, rng, universe=max(4, n))
    spec = PerturbationSpec.draw(n, k, int(rng.integers(1, 4)), rng)
    family = [perturb(base, spec, i) for i in range(k)]
    q = int(rng.integers(2, 4))
    b = int(rng.integers(1, 3))
    matroid = random_partition_matroid(n, q, b, rng)
    return RobustInstance(family, matroid, eps=eps, delta=0.1, k_prime=2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
