"""Discrepancy distances between weighted samples, reweighting algorithms that
minimize them, generalization-bound calculators, and weighted learners with
benchmark pipelines."""

from .bounds import BOUND_REGISTRY, BoundReport, bound_value
from .core import (
    KernelBounded,
    LabeledSample,
    LinearBounded,
    LossSpec,
    SimplexVector,
    Threshold1D,
    WeightedEmpirical,
    empirical_loss,
    merge_duplicates,
)
from .datagen import gen_gaussian_1d, gen_gaussian_regression, interval_labels, tent_values
from .distance import (
    DirectionWitness,
    DiscrepancyResult,
    IntervalWitness,
    RademacherEstimate,
    RegionWitness,
    disc_01_bruteforce,
    disc_01_threshold1d,
    disc_l2_kernel,
    disc_l2_linear,
    joint_support,
    l1_distance,
    moment_gap_matrix,
    rademacher_montecarlo,
    rademacher_threshold1d_exact,
)
from .experiments import (
    ExperimentConfig,
    RunRecord,
    run_experiment_1,
    run_experiment_2,
    write_curve_csv,
    write_trials_csv,
)
from .learners import (
    KernelHypothesis,
    LinearHypothesis,
    StabilityReport,
    ThresholdHypothesis,
    train_weighted_krr,
    train_weighted_ridge,
    train_weighted_threshold,
    verify_stability_bound,
    weighted_zero_one_error,
)
from .linalg import (
    AffineMatrixFamily,
    GaussianKernel,
    LinearKernel,
    PolynomialKernel,
    SymMatrix,
    gram_matrix,
    jacobi_eigen,
    psd_sqrt,
    spectral_abs_max,
)
from .reweight import (
    LEFT_MASS_WARNING,
    ReweightResult,
    SolverConfig,
    canonical_regions_1d,
    grid_oracle,
    minimize_01_lp,
    minimize_1d,
    minimize_l2_kernel,
    minimize_l2_linear,
)
from .sample_io import SampleFormatError, read_sample_csv, to_labeled, to_weighted, write_sample_csv
from .simplex_lp import LPResult, solve_lp

__all__ = [
    "AffineMatrixFamily",
    "BOUND_REGISTRY",
    "BoundReport",
    "DirectionWitness",
    "DiscrepancyResult",
    "ExperimentConfig",
    "GaussianKernel",
    "IntervalWitness",
    "KernelBounded",
    "KernelHypothesis",
    "LEFT_MASS_WARNING",
    "LPResult",
    "LabeledSample",
    "LinearBounded",
    "LinearHypothesis",
    "LinearKernel",
    "LossSpec",
    "PolynomialKernel",
    "RademacherEstimate",
    "RegionWitness",
    "ReweightResult",
    "RunRecord",
    "SampleFormatError",
    "SimplexVector",
    "SolverConfig",
    "StabilityReport",
    "SymMatrix",
    "Threshold1D",
    "ThresholdHypothesis",
    "WeightedEmpirical",
    "bound_value",
    "canonical_regions_1d",
    "disc_01_bruteforce",
    "disc_01_threshold1d",
    "disc_l2_kernel",
    "disc_l2_linear",
    "empirical_loss",
    "gen_gaussian_1d",
    "gen_gaussian_regression",
    "gram_matrix",
    "grid_oracle",
    "interval_labels",
    "jacobi_eigen",
    "joint_support",
    "l1_distance",
    "merge_duplicates",
    "minimize_01_lp",
    "minimize_1d",
    "minimize_l2_kernel",
    "minimize_l2_linear",
    "moment_gap_matrix",
    "psd_sqrt",
    "rademacher_montecarlo",
    "rademacher_threshold1d_exact",
    "read_sample_csv",
    "run_experiment_1",
    "run_experiment_2",
    "solve_lp",
    "spectral_abs_max",
    "tent_values",
    "to_labeled",
    "to_weighted",
    "train_weighted_krr",
    "train_weighted_ridge",
    "train_weighted_threshold",
    "verify_stability_bound",
    "weighted_zero_one_error",
    "write_curve_csv",
    "write_sample_csv",
    "write_trials_csv",
]
