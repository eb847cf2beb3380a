"""Robust monotone submodular maximization under matroid constraints.

Solvers produce bi-criteria solutions: unions of feasible sets whose worst
family objective value is certified near-optimal by a binary search with
per-round guarantee checks.  A brute-force oracle layer verifies every stated
guarantee at desk scale.
"""

from .baselines import SelectionProfile, greedy_on_average, random_selection
from .exact import (
    ExactResult,
    PropertyReport,
    brute_force_robust_opt,
    brute_force_single_opt,
    enumerate_independent_sets,
    verify_monotone_submodular,
)
from .greedy import (
    RoundOutput,
    ThresholdSchedule,
    extended_greedy,
    extended_stochastic_greedy,
    extended_threshold_greedy,
    lazy_greedy,
    naive_greedy,
    stochastic_greedy_round,
    stochastic_sample_size,
    threshold_greedy_round,
)
from .matroid import (
    MatroidOracle,
    PartitionMatroid,
    UniformMatroid,
    random_partition_matroid,
)
from .objectives import (
    CoverageFunction,
    Cursor,
    ExemplarClustering,
    InformationGain,
    KernelSpec,
    NumericError,
    PerturbationSpec,
    PerturbedOracle,
    SubmodularOracle,
    TruncatedAverage,
    VarianceReduction,
    average_objective,
    build_covariance,
    exemplar_clustering,
    info_gain,
    perturb,
    truncated_average,
    variance_reduction,
)
from .robust import (
    ALGORITHMS,
    BiCriteriaResult,
    BoundsInit,
    GammaTrace,
    RobustInstance,
    SolveStats,
    alpha_factor,
    bicriteria_solve,
    check_round_guarantee,
    initialize_bounds,
    rounds_budget,
)

__version__ = "0.1.0"
