"""Command line interface.

Subcommands:
  solve    run one configuration once and print its record
  bench    run the full sweep (all algorithms + baselines) and emit records
  profile  turn a record stream into a performance-profile table
  verify   run the built-in oracle/property battery
"""

from __future__ import annotations

import argparse
import sys

from .checks import run_verification
from .config import ExperimentConfig, load_config
from .experiment import read_records, record_to_json, run_experiment, solve_one, write_records
from .perfprofile import METRICS, performance_profile


def _add_config_flags(sub):
    sub.add_argument("--config", help="path to a key=value config file")
    sub.add_argument("--seed", type=int, help="override the base seed")
    sub.add_argument("--out", help="write output here instead of stdout")
    sub.add_argument("--algorithm", help="override the configured algorithm")
    sub.add_argument(
        "--acceptance-slack",
        choices=("half", "full"),
        help="candidate acceptance threshold: (1 - eps/2) or (1 - eps) times the guess",
    )


def _load(args) -> ExperimentConfig:
    config = load_config(args.config) if args.config else ExperimentConfig()
    if args.seed is not None:
        config.seed = args.seed
    if getattr(args, "algorithm", None):
        config.algorithm = args.algorithm
    if getattr(args, "acceptance_slack", None):
        config.acceptance_slack = args.acceptance_slack
    return config.validate()


def _open_out(args):
    if args.out:
        return open(args.out, "w", encoding="utf-8")
    return sys.stdout


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="robustsub",
        description="Robust submodular maximization experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="one configuration, one run")
    _add_config_flags(solve)
    solve.add_argument("--no-lazy", action="store_true", help="disable lazy evaluations")
    solve.add_argument(
        "--no-early-stop", action="store_true", help="disable all early stopping"
    )

    bench = sub.add_parser("bench", help="full sweep emitting one record per line")
    _add_config_flags(bench)
    bench.add_argument("--repetitions", type=int, help="override configured repetitions")
    bench.add_argument(
        "--no-timing",
        action="store_true",
        help="report wall_ms as 0 so repeated runs are byte-identical",
    )

    profile = sub.add_parser("profile", help="records -> performance profile table")
    profile.add_argument("records", help="path to a bench record stream (JSON lines)")
    profile.add_argument("--metric", choices=METRICS, default="calls")
    profile.add_argument("--out", help="write the CSV table here instead of stdout")
    profile.add_argument(
        "--algorithms", help="comma-separated subset of algorithms to compare"
    )

    verify = sub.add_parser("verify", help="oracle/property suite on the built-in corpus")
    verify.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "solve":
        config = _load(args)
        record, _, _ = solve_one(
            config,
            repetition=0,
            lazy=not args.no_lazy,
            early_stop=not args.no_early_stop,
        )
        out = _open_out(args)
        out.write(record_to_json(record) + "\n")
        if out is not sys.stdout:
            out.close()
        return 0

    if args.command == "bench":
        config = _load(args)
        records = run_experiment(config, args.repetitions, timing=not args.no_timing)
        out = _open_out(args)
        write_records(records, out)
        if out is not sys.stdout:
            out.close()
        return 0

    if args.command == "profile":
        with open(args.records, encoding="utf-8") as fh:
            records = read_records(fh)
        algorithms = args.algorithms.split(",") if args.algorithms else None
        table = performance_profile(records, metric=args.metric, algorithms=algorithms)
        out = _open_out(args)
        out.write(table.to_csv())
        if out is not sys.stdout:
            out.close()
        return 0

    if args.command == "verify":
        outcomes = run_verification(args.seed)
        failed = 0
        for outcome in outcomes:
            status = "PASS" if outcome.passed else "FAIL"
            failed += 0 if outcome.passed else 1
            print(f"{status} {outcome.name}: {outcome.detail}")
        return 1 if failed else 0

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    raise SystemExit(main())
