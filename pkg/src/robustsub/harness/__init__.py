"""Experiment harness: configuration, data ingestion, instance generation,
sweep execution, record emission, and performance profiles."""

from .config import KINDS, ExperimentConfig, for_kind, load_config, parse_config
from .data import center_unit_norm, load_features
from .experiment import (
    BASELINES,
    RunRecord,
    read_records,
    record_from_json,
    record_to_json,
    run_experiment,
    solve_one,
    write_records,
)
from .instances import derive_rng, generate_instance, solver_seed, synthetic_coverage
from .perfprofile import ProfileTable, performance_profile

__all__ = [
    "KINDS",
    "BASELINES",
    "ExperimentConfig",
    "ProfileTable",
    "RunRecord",
    "center_unit_norm",
    "derive_rng",
    "for_kind",
    "generate_instance",
    "load_config",
    "load_features",
    "parse_config",
    "performance_profile",
    "read_records",
    "record_from_json",
    "record_to_json",
    "run_experiment",
    "solve_one",
    "solver_seed",
    "synthetic_coverage",
    "write_records",
]
