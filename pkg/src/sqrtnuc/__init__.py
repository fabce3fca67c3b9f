"""Variance-free nuclear-norm estimators for noisy matrix completion and
matrix regression, with exact spectral solvers and a seeded verification
harness."""

from .completion import (
    CompletionDataset,
    EstimateReport,
    GroundTruth,
    NoiseSpec,
    baseline_known_sigma,
    build_observation_matrix,
    check_hypotheses,
    completion_dataset,
    estimate,
    ground_truth,
    oracle_lambda,
    random_ground_truth,
    sample_design,
    synthesize,
    theory_lambda,
)
from .diagnostics import (
    DiagnosticsRecord,
    collision_count,
    completion_risk_bound,
    delta_ratios,
    diagnostics,
    error_matrix,
    frobenius_envelope,
    operator_norm_bound,
    per_entry_risk_bound,
    regression_risk_bound,
)
from .estimators import SquareRootCompletion, SquareRootMatrixRegression
from .linalg import (
    RANK_TOL,
    ColumnSpaceProjector,
    SvdFactors,
    column_projector,
    min_norm_solve,
    read_matrix_csv,
    schatten_norm,
    sup_norm,
    svd_factors,
    write_matrix_csv,
)
from .regression import (
    RegressionDataset,
    RegressionEstimate,
    RegressionLambdaParams,
    check_rank_condition,
    estimate_regression,
    regression_dataset,
    regression_lambda,
)
from .shrinkage import (
    ShrinkageSolution,
    oracle_sqrt_shrinkage,
    soft_threshold,
    solve_sqrt_shrinkage,
)

__version__ = "0.1.0"

__all__ = [
    "CompletionDataset",
    "EstimateReport",
    "GroundTruth",
    "NoiseSpec",
    "baseline_known_sigma",
    "build_observation_matrix",
    "check_hypotheses",
    "completion_dataset",
    "estimate",
    "ground_truth",
    "oracle_lambda",
    "random_ground_truth",
    "sample_design",
    "synthesize",
    "theory_lambda",
    "DiagnosticsRecord",
    "collision_count",
    "completion_risk_bound",
    "delta_ratios",
    "diagnostics",
    "error_matrix",
    "frobenius_envelope",
    "operator_norm_bound",
    "per_entry_risk_bound",
    "regression_risk_bound",
    "SquareRootCompletion",
    "SquareRootMatrixRegression",
    "RANK_TOL",
    "ColumnSpaceProjector",
    "SvdFactors",
    "column_projector",
    "min_norm_solve",
    "read_matrix_csv",
    "schatten_norm",
    "sup_norm",
    "svd_factors",
    "write_matrix_csv",
    "RegressionDataset",
    "RegressionEstimate",
    "RegressionLambdaParams",
    "check_rank_condition",
    "estimate_regression",
    "regression_dataset",
    "regression_lambda",
    "ShrinkageSolution",
    "oracle_sqrt_shrinkage",
    "soft_threshold",
    "solve_sqrt_shrinkage",
    "__version__",
]
