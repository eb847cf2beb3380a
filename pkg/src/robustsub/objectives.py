"""Monotone submodular objectives behind a counted oracle interface.

Every oracle satisfies ``value(empty) == 0`` and exposes two counted query
kinds: ``value(S)`` and ``marginal(S, e)``.  Solvers do not call these in
their inner loops; they request a :class:`Cursor`, a per-run scratch context
that evaluates marginal gains against one growing set and commits additions
without re-evaluation.  Each ``Cursor.gain`` counts as one evaluation of the
owning oracle, exactly like a ``marginal`` call.

The truncated-average surrogate counts one evaluation of itself and exactly
one evaluation of each family member per warm query (values, cursor gains).
A cold ``marginal`` on it needs the family both at S and S+e and therefore
costs two underlying evaluations per member; solvers never hit that path.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular


class NumericError(RuntimeError):
    """Linear-algebra breakdown inside an oracle, carrying the offending set."""

    def __init__(self, message: str, elements: Iterable[int] = ()):
        super().__init__(message)
        self.elements = frozenset(elements)


class Cursor:
    """Incremental marginal-gain evaluator owned by a single solver run.

    Subclasses implement ``_gain`` (marginal of ``e`` against the current
    set) and ``_commit`` (advance the context by one element).  ``_gain``
    may stash per-element extension state in ``self._staged``; ``add``
    consumes it and clears the stash.
    """

    def __init__(self, oracle: "SubmodularOracle", base: Iterable[int] = ()):
        self._oracle = oracle
        self.members = set(base)
        self._staged: dict[int, object] = {}

    def gain(self, e: int) -> float:
        """Counted marginal gain of ``e`` with respect to the current set."""
        if e in self.members:
            raise ValueError(f"element {e} already in the cursor set")
        self._oracle.evals += 1
        return self._gain(e)

    def add(self, e: int) -> None:
        """Commit ``e``.  Reuses the stash from a prior ``gain(e)`` if present;
        otherwise evaluates (and counts) the gain first."""
        if e not in self._staged:
            self.gain(e)
        self._commit(e, self._staged[e])
        self.members.add(e)
        self._staged.clear()

    @property
    def current_value(self) -> float:
        """Objective value of the current set (free context read, not counted)."""
        raise NotImplementedError

    def _gain(self, e: int) -> float:
        raise NotImplementedError

    def _commit(self, e: int, staged: object) -> None:
        raise NotImplementedError


class _GenericCursor(Cursor):
    """Fallback cursor: full re-evaluation per gain, cached current value."""

    def __init__(self, oracle, base=()):
        super().__init__(oracle, base)
        self._current = oracle._value(frozenset(self.members))

    @property
    def current_value(self):
        return self._current

    def _gain(self, e):
        val = self._oracle._value(frozenset(self.members | {e}))
        self._staged[e] = val
        return val - self._current

    def _commit(self, e, staged):
        self._current = staged


class SubmodularOracle(ABC):
    """Normalized monotone submodular set function with an evaluation counter."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("ground set must contain at least one element")
        self.n = n
        self.evals = 0

    def _check(self, members: Iterable[int]) -> frozenset:
        members = frozenset(members)
        for e in members:
            if not 0 <= e < self.n:
                raise ValueError(f"unknown element id {e}")
        return members

    def value(self, members: Iterable[int]) -> float:
        self.evals += 1
        return self._value(self._check(members))

    def marginal(self, members: Iterable[int], e: int) -> float:
        members = self._check(members)
        if e in members:
            raise ValueError(f"element {e} already in the set")
        if not 0 <= e < self.n:
            raise ValueError(f"unknown element id {e}")
        self.evals += 1
        return self._marginal(members, e)

    @abstractmethod
    def _value(self, members: frozenset) -> float: ...

    def _marginal(self, members: frozenset, e: int) -> float:
        return self._value(members | {e}) - self._value(members)

    def cursor(self, base: Iterable[int] = ()) -> Cursor:
        return _GenericCursor(self, base)


# ---------------------------------------------------------------------------
# coverage


class _CoverageCursor(Cursor):
    def __init__(self, oracle: "CoverageFunction", base=()):
        super().__init__(oracle, base)
        self._mask = 0
        for x in self.members:
            self._mask |= oracle._masks[x]
        self._wsum = oracle._weight_of(self._mask)

    @property
    def current_value(self):
        return self._wsum

    def _gain(self, e):
        mask = self._mask | self._oracle._masks[e]
        wsum = self._oracle._weight_of(mask)
        self._staged[e] = (mask, wsum)
        return wsum - self._wsum

    def _commit(self, e, staged):
        self._mask, self._wsum = staged


class CoverageFunction(SubmodularOracle):
    """Weighted coverage: value of a set is the total weight of the union of
    the items its elements cover.  Exact and integer-valued for unit weights,
    which makes it the workhorse test objective."""

    def __init__(self, covers: Sequence[Iterable], weights: dict | None = None):
        super().__init__(len(covers))
        items = sorted({item for cov in covers for item in cov}, key=repr)
        index = {item: i for i, item in enumerate(items)}
        self._masks = [0] * self.n
        for e, cov in enumerate(covers):
            for item in cov:
                self._masks[e] |= 1 << index[item]
        if weights is None:
            self._weights = None
        else:
            self._weights = [float(weights.get(item, 1.0)) for item in items]

    def _weight_of(self, mask: int) -> float:
        if self._weights is None:
            return float(mask.bit_count())
        total = 0.0
        while mask:
            low = mask & -mask
            total += self._weights[low.bit_length() - 1]
            mask ^= low
        return total

    def _union_mask(self, members) -> int:
        mask = 0
        for e in members:
            mask |= self._masks[e]
        return mask

    def _value(self, members):
        return self._weight_of(self._union_mask(members))

    def _marginal(self, members, e):
        mask = self._union_mask(members)
        return self._weight_of(mask | self._masks[e]) - self._weight_of(mask)

    def cursor(self, base=()):
        return _CoverageCursor(self, base)


# ---------------------------------------------------------------------------
# information gain (Gaussian process log-determinant)


@dataclass(frozen=True)
class KernelSpec:
    """Squared-exponential kernel parameters."""

    bandwidth: float = 0.75
    noise: float = 1.0

    def __post_init__(self):
        if self.bandwidth <= 0:
            raise ValueError("bandwidth must be positive")
        if self.noise <= 0:
            raise ValueError("noise variance must be positive")


def build_covariance(features: np.ndarray, kernel: KernelSpec) -> np.ndarray:
    """Gram matrix K[e, e'] = exp(-||x_e - x_e'||^2 / h) with exact unit diagonal."""
    features = np.asarray(features, dtype=float)
    if features.ndim != 2:
        raise ValueError("features must be a 2-d array (one row per element)")
    sq = np.sum(features**2, axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * features @ features.T
    np.maximum(d2, 0.0, out=d2)
    cov = np.exp(-d2 / kernel.bandwidth)
    cov = 0.5 * (cov + cov.T)
    np.fill_diagonal(cov, 1.0)
    return cov


_PIVOT_FLOOR = 1e-12


def _fresh_factor(oracle: "InformationGain", order: Sequence[int]):
    """Cholesky of I + s*Sigma over ``order``; None if not positive definite."""
    if not len(order):
        return np.zeros((0, 0)), 0.0
    idx = list(order)
    mat = np.eye(len(idx)) + oracle._scale * oracle._cov[np.ix_(idx, idx)]
    try:
        chol = np.linalg.cholesky(mat)
    except np.linalg.LinAlgError:
        return None
    return chol, 2.0 * float(np.sum(np.log(np.diag(chol))))


class _LogDetCursor(Cursor):
    """Grows a Cholesky factor of I + s*Sigma_AA one row per addition.

    A gain solves one triangular system (O(|A|^2)); if the new pivot falls
    below the floor the whole factor is rebuilt from scratch before giving up.
    """

    def __init__(self, oracle: "InformationGain", base=()):
        super().__init__(oracle, base)
        self._order: list[int] = []
        self._chol = np.zeros((0, 0))
        self._logdet = 0.0
        for e in sorted(self.members):
            self._extend(e, self._extension(e))

    @property
    def current_value(self):
        return 0.5 * self._logdet

    def _extension(self, e):
        oracle = self._oracle
        diag = 1.0 + oracle._scale * oracle._cov[e, e]
        if not self._order:
            return None, diag
        col = oracle._scale * oracle._cov[self._order, e]
        y = solve_triangular(self._chol, col, lower=True, check_finite=False)
        pivot = diag - float(y @ y)
        if pivot <= _PIVOT_FLOOR:
            rebuilt = _fresh_factor(oracle, self._order + [e])
            if rebuilt is None:
                raise NumericError(
                    "covariance submatrix is not positive definite",
                    set(self._order) | {e},
                )
            return rebuilt, None
        return y, pivot

    def _extend(self, e, staged):
        first, second = staged
        if second is None:  # rebuilt full factor from the fallback path
            self._chol, self._logdet = first
        elif first is None:  # first element
            self._chol = np.array([[math.sqrt(second)]])
            self._logdet = math.log(second)
        else:
            y, pivot = first, second
            m = len(self._order)
            grown = np.zeros((m + 1, m + 1))
            grown[:m, :m] = self._chol
            grown[m, :m] = y
            grown[m, m] = math.sqrt(pivot)
            self._chol = grown
            self._logdet += math.log(pivot)
        self._order.append(e)

    def _gain(self, e):
        staged = self._extension(e)
        self._staged[e] = staged
        first, second = staged
        if second is None:
            return 0.5 * (first[1] - self._logdet)
        return 0.5 * math.log(second)

    def _commit(self, e, staged):
        self._extend(e, staged)


class InformationGain(SubmodularOracle):
    """f(A) = 0.5 * log det(I + Sigma_AA / noise) for a positive-definite
    covariance; marginals extend a cached Cholesky factor instead of
    refactorizing."""

    def __init__(self, cov: np.ndarray, noise: float = 1.0):
        cov = np.asarray(cov, dtype=float)
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
            raise ValueError("covariance must be square")
        if noise <= 0:
            raise ValueError("noise variance must be positive")
        super().__init__(cov.shape[0])
        self._cov = cov
        self._scale = 1.0 / noise

    def _value(self, members):
        got = _fresh_factor(self, sorted(members))
        if got is None:
            raise NumericError("covariance submatrix is not positive definite", members)
        return 0.5 * got[1]

    def _marginal(self, members, e):
        cur = _LogDetCursor(self, members)
        return cur._gain(e)

    def cursor(self, base=()):
        return _LogDetCursor(self, base)


def info_gain(cov: np.ndarray, noise: float = 1.0) -> InformationGain:
    return InformationGain(cov, noise)


# ---------------------------------------------------------------------------
# exemplar clustering


class _ClusterCursor(Cursor):
    def __init__(self, oracle: "ExemplarClustering", base=()):
        super().__init__(oracle, base)
        self._mind = oracle._mind(sorted(self.members))

    @property
    def current_value(self):
        return float(self._oracle._anchor_dist.mean() - self._mind.mean())

    def _gain(self, e):
        new = np.minimum(self._mind, self._oracle._dist_row(e))
        self._staged[e] = new
        return float(self._mind.mean() - new.mean())

    def _commit(self, e, staged):
        self._mind = staged


class ExemplarClustering(SubmodularOracle):
    """Reduction of the mean nearest-exemplar distance relative to a fixed
    anchor point: f(A) = L({anchor}) - L(A + anchor) with
    L(A) = mean_e min_{v in A} ||x_e - x_v||."""

    def __init__(self, points: np.ndarray, anchor: np.ndarray | None = None):
        points = np.asarray(points, dtype=float)
        if points.ndim != 2 or points.shape[0] == 0:
            raise ValueError("need a non-empty 2-d point array")
        super().__init__(points.shape[0])
        self._points = points
        if anchor is None:
            anchor = np.zeros(points.shape[1])
        self._anchor_dist = np.linalg.norm(points - np.asarray(anchor, float), axis=1)

    def _dist_row(self, e: int) -> np.ndarray:
        return np.linalg.norm(self._points - self._points[e], axis=1)

    def _mind(self, members) -> np.ndarray:
        mind = self._anchor_dist.copy()
        for x in members:
            np.minimum(mind, self._dist_row(x), out=mind)
        return mind

    def _value(self, members):
        return float(self._anchor_dist.mean() - self._mind(members).mean())

    def _marginal(self, members, e):
        mind = self._mind(members)
        return float(mind.mean() - np.minimum(mind, self._dist_row(e)).mean())

    def cursor(self, base=()):
        return _ClusterCursor(self, base)


def exemplar_clustering(points, anchor=None) -> ExemplarClustering:
    return ExemplarClustering(points, anchor)


# ---------------------------------------------------------------------------
# variance reduction


class VarianceReduction(SubmodularOracle):
    """Predictive variance reduction at a target location (or averaged over
    all locations): f_s(A) = Sigma_sA Sigma_AA^{-1} Sigma_As."""

    def __init__(self, cov: np.ndarray, target: int | None = None):
        cov = np.asarray(cov, dtype=float)
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
            raise ValueError("covariance must be square")
        super().__init__(cov.shape[0])
        if target is not None and not 0 <= target < self.n:
            raise ValueError(f"unknown target id {target}")
        self._cov = cov
        self._target = target

    def _value(self, members):
        if not members:
            return 0.0
        idx = sorted(members)
        sub = self._cov[np.ix_(idx, idx)]
        try:
            chol = np.linalg.cholesky(sub)
        except np.linalg.LinAlgError as exc:
            raise NumericError("singular covariance submatrix", members) from exc
        if self._target is not None:
            rhs = self._cov[idx, self._target]
            y = solve_triangular(chol, rhs, lower=True, check_finite=False)
            return float(y @ y)
        w = solve_triangular(chol, self._cov[idx, :], lower=True, check_finite=False)
        return float(np.sum(w * w) / self.n)


def variance_reduction(cov: np.ndarray, target: int | None = None) -> VarianceReduction:
    return VarianceReduction(cov, target)


# ---------------------------------------------------------------------------
# perturbation


@dataclass(frozen=True)
class PerturbationSpec:
    """Modular noise shared by a robust family: one random element subset per
    objective and one uniform error value per ground element."""

    subsets: tuple[frozenset, ...]
    errors: np.ndarray
    seed: int | None = None

    @property
    def k(self) -> int:
        return len(self.subsets)

    @classmethod
    def draw(cls, n: int, k: int, size: int, rng: np.random.Generator, seed=None):
        if not 0 <= size <= n:
            raise ValueError("perturbation subset size must lie in [0, n]")
        subsets = tuple(
            frozenset(int(e) for e in rng.choice(n, size=size, replace=False))
            for _ in range(k)
        )
        return cls(subsets=subsets, errors=rng.uniform(0.0, 1.0, size=n), seed=seed)


class _PerturbedCursor(Cursor):
    def __init__(self, oracle: "PerturbedOracle", base=()):
        super().__init__(oracle, base)
        self._inner = oracle.base.cursor(base)
        self._bonus_sum = float(sum(oracle.bonus[e] for e in self.members))

    @property
    def current_value(self):
        return self._inner.current_value + self._bonus_sum

    def _gain(self, e):
        self._staged[e] = None
        return self._inner.gain(e) + self._oracle.bonus[e]

    def _commit(self, e, staged):
        self._inner.add(e)
        self._bonus_sum += self._oracle.bonus[e]


class PerturbedOracle(SubmodularOracle):
    """Base objective plus a modular bonus on one perturbation subset."""

    def __init__(self, base: SubmodularOracle, spec: PerturbationSpec, index: int):
        if not 0 <= index < spec.k:
            raise ValueError(f"objective index {index} out of range [0, {spec.k})")
        super().__init__(base.n)
        self.base = base
        self.index = index
        self.bonus = np.where(
            np.isin(np.arange(base.n), list(spec.subsets[index])), spec.errors, 0.0
        )

    def _value(self, members):
        return self.base.value(members) + float(sum(self.bonus[e] for e in members))

    def _marginal(self, members, e):
        return self.base.marginal(members, e) + float(self.bonus[e])

    def cursor(self, base=()):
        return _PerturbedCursor(self, base)


def perturb(base: SubmodularOracle, spec: PerturbationSpec, index: int) -> PerturbedOracle:
    return PerturbedOracle(base, spec, index)


# ---------------------------------------------------------------------------
# truncated average surrogate


class _TruncatedCursor(Cursor):
    """Tracks the raw family values of the current set.

    Family members that are modular perturbations of one shared base are
    evaluated through a single shared cursor for that base, so a gain costs
    one expensive base extension regardless of the family size.  Each member
    still counts one evaluation per gain.
    """

    def __init__(self, oracle: "TruncatedAverage", base=()):
        super().__init__(oracle, base)
        self._inner: dict[int, Cursor] = {}
        self._routes = []  # per member: (cursor key, modular bonus array or None)
        for f in oracle.family:
            if isinstance(f, PerturbedOracle):
                key = id(f.base)
                self._inner.setdefault(key, f.base.cursor(base))
                self._routes.append((key, f.bonus))
            else:
                key = id(f)
                self._inner.setdefault(key, f.cursor(base))
                self._routes.append((key, None))
        raw = []
        for (key, bonus), f in zip(self._routes, oracle.family):
            v = self._inner[key].current_value
            if bonus is not None:
                v += float(sum(bonus[e] for e in self.members))
            raw.append(v)
        self._raw = np.array(raw, dtype=float)

    @property
    def current_value(self):
        return float(np.minimum(self._raw, self._oracle.gamma).mean())

    def _gain(self, e):
        oracle = self._oracle
        base_gain = {key: cur.gain(e) for key, cur in self._inner.items()}
        raw = self._raw
        new = np.empty_like(raw)
        for i, (key, bonus) in enumerate(self._routes):
            g = base_gain[key]
            if bonus is not None:
                g += bonus[e]
                oracle.family[i].evals += 1
            new[i] = raw[i] + g
        gamma = oracle.gamma
        self._staged[e] = new
        return float(np.minimum(new, gamma).mean() - np.minimum(raw, gamma).mean())

    def _commit(self, e, staged):
        for cur in self._inner.values():
            cur.add(e)
        self._raw = staged


class TruncatedAverage(SubmodularOracle):
    """Average of the family members truncated at a level: the surrogate that
    reduces max-min optimization to single-function maximization per guess."""

    def __init__(self, family: Sequence[SubmodularOracle], gamma: float):
        if not family:
            raise ValueError("family must be non-empty")
        if not gamma > 0:
            raise ValueError("truncation level must be positive")
        ns = {f.n for f in family}
        if len(ns) != 1:
            raise ValueError("family members disagree on the ground set size")
        super().__init__(ns.pop())
        self.family = list(family)
        self.gamma = float(gamma)

    @property
    def k(self) -> int:
        return len(self.family)

    def _value(self, members):
        vals = [min(f.value(members), self.gamma) for f in self.family]
        return float(sum(vals) / len(vals))

    def cursor(self, base=()):
        return _TruncatedCursor(self, base)


def truncated_average(family: Sequence[SubmodularOracle], gamma: float) -> TruncatedAverage:
    return TruncatedAverage(family, gamma)


def average_objective(family: Sequence[SubmodularOracle]) -> TruncatedAverage:
    """Plain family average (truncation level set above any reachable value)."""
    return TruncatedAverage(family, math.inf)
