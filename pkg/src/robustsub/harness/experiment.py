"""Sweep execution and line-record emission.

A bench sweep runs every solver algorithm on every repetition, then replays
the worst solution's selection profile through the two baselines.  Each
(algorithm, repetition) cell owns a freshly generated instance, so oracle
counters are isolated.  Records serialize as one JSON object per line with a
schema version; streams are emitted in (algorithm, repetition) order.
"""

from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass

from ..baselines import SelectionProfile, greedy_on_average, random_selection
from ..robust import ALGORITHMS, BiCriteriaResult, bicriteria_solve
from .config import ExperimentConfig, config_to_dict
from .instances import STREAM_RANDOM_SELECTION, derive_rng, generate_instance, solver_seed

SCHEMA_VERSION = 1

BASELINES = ("rs", "g-avg")

RECORD_ORDER = ALGORITHMS + BASELINES


@dataclass
class RunRecord:
    """One run's metrics plus a config echo; round-trips through JSON."""

    schema: int
    kind: str
    algorithm: str
    repetition: int
    base_seed: int
    value: float
    lb: float | None
    ub: float | None
    lb_init: float | None
    ub_init: float | None
    nu: int | None
    tau_max: int
    rounds_budget: int | None
    surrogate_evals: int
    family_evals: int
    wall_ms: float
    gamma_iterations: int
    lazy: bool | None
    early_stop: bool | None
    acceptance_slack: str | None
    error: str | None
    config: dict


def record_to_json(record: RunRecord) -> str:
    return json.dumps(dataclasses.asdict(record), sort_keys=True, separators=(",", ":"))


def record_from_json(line: str) -> RunRecord:
    data = json.loads(line)
    if data.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported record schema {data.get('schema')!r}")
    return RunRecord(**data)


def _result_record(
    config: ExperimentConfig,
    algorithm: str,
    repetition: int,
    result: BiCriteriaResult,
    timing: bool,
) -> RunRecord:
    return RunRecord(
        schema=SCHEMA_VERSION,
        kind=config.kind,
        algorithm=algorithm,
        repetition=repetition,
        base_seed=config.seed,
        value=result.value,
        lb=result.lb,
        ub=result.ub,
        lb_init=result.lb_init,
        ub_init=result.ub_init,
        nu=result.nu,
        tau_max=len(result.rounds),
        rounds_budget=result.stats.rounds_budget,
        surrogate_evals=result.stats.surrogate_evals,
        family_evals=result.stats.family_evals,
        wall_ms=result.stats.wall_ms if timing else 0.0,
        gamma_iterations=result.stats.outer_iterations,
        lazy=result.stats.lazy,
        early_stop=result.stats.early_stop,
        acceptance_slack=result.stats.acceptance_slack,
        error=None,
        config=config_to_dict(config),
    )


def solve_one(
    config: ExperimentConfig,
    repetition: int = 0,
    algorithm: str | None = None,
    *,
    lazy: bool = True,
    early_stop: bool = True,
    timing: bool = True,
):
    """Generate the (config, repetition) instance, solve it with one
    algorithm, and return (record, result, instance)."""
    algorithm = algorithm or config.algorithm
    instance = generate_instance(config, repetition)
    result = bicriteria_solve(
        instance,
        algorithm,
        seed=solver_seed(config.seed, repetition, ALGORITHMS.index(algorithm)),
        lazy=lazy,
        early_stop=early_stop,
        acceptance_slack=config.acceptance_slack,
    )
    record = _result_record(config, algorithm, repetition, result, timing)
    return record, result, instance


def _baseline_records(config, repetition, worst_result, timing):
    """Replay the worst (largest violation) solution's profile through both
    baselines, each on a fresh instance for isolated counters."""
    records = []
    for name in BASELINES:
        instance = generate_instance(config, repetition)
        matroid = instance.matroid
        profile = SelectionProfile.from_rounds(matroid, worst_result.rounds)
        started = time.perf_counter()
        if name == "rs":
            chosen = random_selection(
                profile, matroid, derive_rng(config.seed, repetition, STREAM_RANDOM_SELECTION)
            )
        else:
            chosen = greedy_on_average(instance.family, profile, matroid)
        value = min(f.value(chosen) for f in instance.family)
        wall_ms = (time.perf_counter() - started) * 1000.0
        records.append(
            RunRecord(
                schema=SCHEMA_VERSION,
                kind=config.kind,
                algorithm=name,
                repetition=repetition,
                base_seed=config.seed,
                value=value,
                lb=None,
                ub=None,
                lb_init=None,
                ub_init=None,
                nu=matroid.violation_ratio(chosen),
                tau_max=profile.num_rounds,
                rounds_budget=None,
                surrogate_evals=0,
                family_evals=sum(f.evals for f in instance.family),
                wall_ms=wall_ms if timing else 0.0,
                gamma_iterations=0,
                lazy=None,
                early_stop=None,
                acceptance_slack=None,
                error=None,
                config=config_to_dict(config),
            )
        )
    return records


def _error_record(config, algorithm, repetition, exc) -> RunRecord:
    return RunRecord(
        schema=SCHEMA_VERSION,
        kind=config.kind,
        algorithm=algorithm,
        repetition=repetition,
        base_seed=config.seed,
        value=0.0,
        lb=None,
        ub=None,
        lb_init=None,
        ub_init=None,
        nu=None,
        tau_max=0,
        rounds_budget=None,
        surrogate_evals=0,
        family_evals=0,
        wall_ms=0.0,
        gamma_iterations=0,
        lazy=None,
        early_stop=None,
        acceptance_slack=None,
        error=f"{type(exc).__name__}: {exc}",
        config=config_to_dict(config),
    )


def run_experiment(
    config: ExperimentConfig,
    repetitions: int | None = None,
    *,
    timing: bool = True,
) -> list[RunRecord]:
    """Run all four algorithms plus both baselines on every repetition.

    Solver errors are recorded per cell without aborting the sweep; baselines
    for a repetition are skipped if every algorithm failed on it.  Records are
    returned sorted by (algorithm, repetition).
    """
    config.validate()
    reps = config.repetitions if repetitions is None else repetitions
    records: list[RunRecord] = []
    for rep in range(reps):
        results = {}
        for algorithm in ALGORITHMS:
            try:
                record, result, _ = solve_one(
                    config, rep, algorithm, timing=timing
                )
                results[algorithm] = result
            except Exception as exc:  # noqa: BLE001 - sweeps must survive bad cells
                record = _error_record(config, algorithm, rep, exc)
            records.append(record)
        candidates = {a: r for a, r in results.items() if r.nu is not None}
        if candidates:
            worst = max(candidates, key=lambda a: (candidates[a].nu, -ALGORITHMS.index(a)))
            records.extend(_baseline_records(config, rep, candidates[worst], timing))
    order = {name: i for i, name in enumerate(RECORD_ORDER)}
    records.sort(key=lambda r: (order[r.algorithm], r.repetition))
    return records


def write_records(records, stream) -> None:
    for record in records:
        stream.write(record_to_json(record) + "\n")


def read_records(stream) -> list[RunRecord]:
    return [record_from_json(line) for line in stream if line.strip()]
