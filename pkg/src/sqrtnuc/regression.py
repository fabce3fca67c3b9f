"""Matrix regression with unknown noise level.

Model: ``U = V @ A0 + E`` with an l x m1 predictor matrix V, l x m2 responses
U and independent mean-zero noise.  The estimator penalizes the nuclear norm
of the fitted responses ``V @ A``, which reduces the problem exactly to the
spectral shrinkage subproblem on the projection of U onto col(V): writing
Z = P_V U and c = ||U - Z||_F,

    ||U - B||_F^2 = ||Z - B||_F^2 + c^2   for every B with columns in col(V),

and the left singular vectors of Z with positive singular value already lie
in col(V), so the constraint is inactive for the spectral-form minimizer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import RANK_TOL, column_projector, min_norm_solve, schatten_norm, svd_factors
from .shrinkage import solve_sqrt_shrinkage
from .validation import as_matrix

__all__ = [
    "RegressionDataset",
    "RegressionLambdaParams",
    "RegressionEstimate",
    "RankCondition",
    "regression_dataset",
    "regression_lambda",
    "check_rank_condition",
    "estimate_regression",
]


@dataclass(frozen=True)
class RegressionLambdaParams:
    """Concentration knobs behind the dimension-only penalty weight.

    ``alpha`` controls the Frobenius concentration of the noise,
    ``beta`` the tail of its projected operator norm; gamma = (1+beta)/(1-alpha).
    """

    alpha: float = 0.1
    beta: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if self.beta <= 0.0:
            raise ValueError("beta must be positive")

    @property
    def gamma(self) -> float:
        return (1.0 + self.beta) / (1.0 - self.alpha)


@dataclass(frozen=True)
class RegressionDataset:
    """Predictors, responses and the numerical rank of the predictor matrix."""

    V: np.ndarray  # (l, m1)
    U: np.ndarray  # (l, m2)
    rank_V: int

    @property
    def l(self) -> int:
        return self.V.shape[0]

    @property
    def m1(self) -> int:
        return self.V.shape[1]

    @property
    def m2(self) -> int:
        return self.U.shape[1]


def regression_dataset(V, U, rank_tol: float = RANK_TOL) -> RegressionDataset:
    Vm = as_matrix(V, "V")
    Um = as_matrix(U, "U")
    if Vm.shape[0] != Um.shape[0]:
        raise ValueError(f"V has {Vm.shape[0]} rows but U has {Um.shape[0]}")
    return RegressionDataset(V=Vm, U=Um, rank_V=column_projector(Vm, rank_tol).rank)


def regression_lambda(l: int, m2: int, r: int, params: RegressionLambdaParams) -> float:
    """Dimension-only penalty weight (1+beta)(sqrt(m2)+sqrt(r)) / ((1-alpha) sqrt(l m2))."""
    if min(l, m2, r) < 1:
        raise ValueError("l, m2 and r must be positive")
    return (1.0 + params.beta) * (math.sqrt(m2) + math.sqrt(r)) / (
        (1.0 - params.alpha) * math.sqrt(l * m2)
    )


@dataclass(frozen=True)
class RankCondition:
    """Whether rank(V A0) fits under the contraction budget, with slack."""

    ok: bool
    limit: float   # rho^2 l m2 / (2 gamma^2 (sqrt(m2)+sqrt(r))^2)
    margin: float  # limit - rank_va0


def check_rank_condition(
    l: int, m2: int, r: int, rank_va0: int, rho: float, params: RegressionLambdaParams
) -> RankCondition:
    if min(l, m2, r) < 1 or rank_va0 < 0:
        raise ValueError("dimensions must be positive and rank_va0 nonnegative")
    if not 0.0 < rho < 1.0:
        raise ValueError("rho must lie in (0, 1)")
    limit = rho * rho * l * m2 / (2.0 * params.gamma**2 * (math.sqrt(m2) + math.sqrt(r)) ** 2)
    return RankCondition(ok=rank_va0 <= limit, limit=limit, margin=limit - rank_va0)


@dataclass(frozen=True)
class RegressionEstimate:
    """Minimum-norm coefficient estimate and its fitted responses.

    Any A with V A = B_hat minimizes the objective; the minimum-Frobenius-norm
    representative makes the output deterministic and testable.
    """

    A_hat: np.ndarray  # (m1, m2), minimum-norm
    B_hat: np.ndarray  # (l, m2) = V @ A_hat
    lam: float
    rank_va: int
    residual: float    # ||U - B_hat||_F


def estimate_regression(
    dataset: RegressionDataset, lam: float, rank_tol: float = RANK_TOL
) -> RegressionEstimate:
    """Exact reduction to the spectral subproblem on the projected responses."""
    if lam <= 0:
        raise ValueError("lam must be positive")
    proj = column_projector(dataset.V, rank_tol)
    Z = proj.apply(dataset.U)
    c = schatten_norm(dataset.U - Z, 2) if proj.rank < dataset.l else 0.0
    f = svd_factors(Z)
    sol = solve_sqrt_shrinkage(f.singulars, lam, c)
    B_hat = (f.left * sol.s) @ f.right.T
    A_hat = min_norm_solve(dataset.V, B_hat, rank_tol)
    return RegressionEstimate(
        A_hat=A_hat,
        B_hat=B_hat,
        lam=float(lam),
        rank_va=sol.retained,
        residual=sol.radius,
    )
