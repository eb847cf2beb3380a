"""Seeded instance generation for every experiment kind.

One base seed fans out through counter-style streams (base, repetition,
stream-id, ...), so adding algorithms or repetitions never perturbs existing
draws.  Stream 0 is instance composition, stream 1 solver randomness (plus an
algorithm index), stream 2 the random-selection baseline.
"""

from __future__ import annotations

import numpy as np

from ..matroid import random_partition_matroid
from ..objectives import (
    CoverageFunction,
    ExemplarClustering,
    InformationGain,
    KernelSpec,
    PerturbationSpec,
    SubmodularOracle,
    VarianceReduction,
    build_covariance,
    perturb,
)
from ..robust import RobustInstance
from .config import SYNTHETIC_FEATURE_DIM, ExperimentConfig
from .data import center_unit_norm, load_features

STREAM_INSTANCE = 0
STREAM_SOLVER = 1
STREAM_RANDOM_SELECTION = 2


def derive_rng(seed: int, *stream: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), *map(int, stream)])


def solver_seed(config_seed: int, repetition: int, algorithm_index: int) -> list[int]:
    return [int(config_seed), int(repetition), STREAM_SOLVER, int(algorithm_index)]


def synthetic_coverage(
    n: int, rng: np.random.Generator, universe: int | None = None
) -> CoverageFunction:
    """Random coverage instance: each element covers 1 to 3 items of a
    universe of size 2n (by default)."""
    universe = 2 * n if universe is None else universe
    covers = []
    for _ in range(n):
        size = int(rng.integers(1, 4))
        covers.append([int(x) for x in rng.choice(universe, size=size, replace=False)])
    return CoverageFunction(covers)


def _synthetic_cloud(n: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    return center_unit_norm(rng.normal(size=(n, dim)))


def _base_objectives(config: ExperimentConfig, rng: np.random.Generator):
    """Build the k base objectives (usually one shared base) and report the
    effective ground set size."""
    kind = config.kind
    if kind == "coverage-synthetic":
        if config.dataset is not None:
            raise ValueError("coverage-synthetic does not take a dataset path")
        base = synthetic_coverage(config.n, rng)
        return [base] * config.k, config.n
    if kind == "info-gain":
        if config.dataset is not None:
            features = load_features(config.dataset)
        else:
            features = _synthetic_cloud(config.n, SYNTHETIC_FEATURE_DIM, rng)
        cov = build_covariance(features, KernelSpec(config.kernel_h, config.sigma_sq))
        base = InformationGain(cov, noise=config.sigma_sq)
        return [base] * config.k, features.shape[0]
    if kind == "clustering":
        if config.dataset is not None:
            points = load_features(config.dataset)
        else:
            points = _synthetic_cloud(config.n, SYNTHETIC_FEATURE_DIM, rng)
        base = ExemplarClustering(points)  # anchor: the origin after normalization
        return [base] * config.k, points.shape[0]
    if kind == "sensor":
        if config.dataset is not None:
            raise ValueError(
                "the sensor kind is synthetic-only; it builds one covariance per objective"
            )
        bases: list[SubmodularOracle] = []
        for _ in range(config.k):
            cloud = _synthetic_cloud(config.n, 3, rng)
            cov = build_covariance(cloud, KernelSpec(config.kernel_h, config.sigma_sq))
            bases.append(VarianceReduction(cov, target=None))
        return bases, config.n
    raise ValueError(f"unknown experiment kind {config.kind!r}")


def generate_instance(config: ExperimentConfig, repetition: int = 0) -> RobustInstance:
    """Deterministic instance for (config.seed, repetition): base objective,
    perturbation subsets and errors, then the random partition.  Oracles and
    their counters are fresh on every call."""
    config.validate()
    rng = derive_rng(config.seed, repetition, STREAM_INSTANCE)
    bases, n = _base_objectives(config, rng)
    if config.lam_size > n:
        raise ValueError(
            f"lam_size {config.lam_size} exceeds the effective ground set size {n}"
        )
    if config.q > n:
        raise ValueError(f"q {config.q} exceeds the effective ground set size {n}")
    spec = PerturbationSpec.draw(n, config.k, config.lam_size, rng, seed=config.seed)
    family = [perturb(bases[i], spec, i) for i in range(config.k)]
    matroid = random_partition_matroid(n, config.q, config.b, rng)
    return RobustInstance(
        family=family,
        matroid=matroid,
        eps=config.eps,
        delta=config.delta,
        eps_prime=config.eps_prime,
        k_prime=config.k_prime,
    )
