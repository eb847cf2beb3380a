"""Experiment configuration: a flat dataclass with per-kind defaults and a
plain ``key=value`` file format."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields

from ..robust import ALGORITHMS

KINDS = ("info-gain", "clustering", "sensor", "coverage-synthetic")

SYNTHETIC_FEATURE_DIM = 22


@dataclass
class ExperimentConfig:
    """All experiment knobs.  Global defaults mirror the reference protocol
    (eps 0.01, delta 0.1, eps' 0.1, k 20, sigma^2 1, h 0.75); shape parameters
    vary per experiment kind, see ``for_kind``."""

    kind: str = "coverage-synthetic"
    algorithm: str = "e-thg"
    n: int = 200
    eps: float = 0.01
    delta: float = 0.1
    eps_prime: float = 0.1
    k: int = 20
    k_prime: int = 3
    q: int = 3
    b: int = 5
    lam_size: int = 50
    kernel_h: float = 0.75
    sigma_sq: float = 1.0
    seed: int = 0
    dataset: str | None = None
    repetitions: int = 20
    acceptance_slack: str = "half"

    def validate(self) -> "ExperimentConfig":
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}; expected {KINDS}")
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; expected {ALGORITHMS}")
        if self.acceptance_slack not in ("half", "full"):
            raise ValueError("acceptance_slack must be 'half' or 'full'")
        for name in ("eps", "delta", "eps_prime"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {v}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.k < 1:
            raise ValueError("k must be positive")
        if not 1 <= self.k_prime <= self.k:
            raise ValueError("need 1 <= k_prime <= k")
        if not 1 <= self.q <= self.n:
            raise ValueError("need 1 <= q <= n")
        if self.b < 0:
            raise ValueError("b must be non-negative")
        if not 0 <= self.lam_size <= self.n:
            raise ValueError("lam_size must lie in [0, n]")
        if self.kernel_h <= 0:
            raise ValueError("kernel_h must be positive")
        if self.sigma_sq <= 0:
            raise ValueError("sigma_sq must be positive")
        if self.repetitions < 1:
            raise ValueError("repetitions must be positive")
        return self


# Shape defaults per experiment kind.  The two dataset-backed kinds default to
# their reference shapes; synthetic stand-ins keep n desk-sized.
_KIND_DEFAULTS: dict[str, dict] = {
    "info-gain": {"n": 200, "k": 20, "q": 3, "b": 5, "lam_size": 50},
    "clustering": {"n": 3000, "k": 20, "q": 6, "b": 70, "lam_size": 500},
    "sensor": {"n": 44, "k": 3, "k_prime": 3, "q": 3, "b": 1, "lam_size": 15},
    "coverage-synthetic": {"n": 200, "k": 10, "q": 5, "b": 4, "lam_size": 20},
}


def for_kind(kind: str, **overrides) -> ExperimentConfig:
    """Config with the given kind's shape defaults, then explicit overrides."""
    if kind not in KINDS:
        raise ValueError(f"unknown experiment kind {kind!r}; expected {KINDS}")
    values = {"kind": kind, **_KIND_DEFAULTS[kind], **overrides}
    return ExperimentConfig(**values).validate()


_FIELD_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}


def _coerce(name: str, raw: str):
    if name not in _FIELD_TYPES:
        raise ValueError(f"unknown config key {name!r}")
    kind = _FIELD_TYPES[name]
    raw = raw.strip()
    if name == "dataset":
        return raw or None
    if kind == "int":
        return int(raw)
    if kind == "float":
        return float(raw)
    return raw


def parse_config(text: str) -> ExperimentConfig:
    """Parse flat ``key=value`` lines (# comments and blank lines allowed)."""
    pairs = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValueError(f"line {lineno}: expected key=value, got {line!r}")
        key, _, raw = stripped.partition("=")
        pairs[key.strip()] = _coerce(key.strip(), raw)
    kind = pairs.pop("kind", "coverage-synthetic")
    return for_kind(kind, **pairs)


def load_config(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def config_to_text(config: ExperimentConfig) -> str:
    lines = []
    for f in fields(config):
        value = getattr(config, f.name)
        lines.append(f"{f.name}={'' if value is None else value}")
    return "\n".join(lines) + "\n"


def config_to_dict(config: ExperimentConfig) -> dict:
    return dataclasses.asdict(config)
