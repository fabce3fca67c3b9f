"""Scikit-learn style front ends for the two square-root estimators.

These wrappers exist so the solvers compose with the wider ecosystem
(``get_params`` / ``set_params``, cloning, pipelines); the functional API in
:mod:`sqrtnuc.completion` and :mod:`sqrtnuc.regression` stays the primary
surface for simulation work.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .completion import completion_dataset, estimate, theory_lambda
from .linalg import RANK_TOL
from .regression import (
    RegressionLambdaParams,
    estimate_regression,
    regression_dataset,
    regression_lambda,
)
from .validation import check_cells

__all__ = ["SquareRootCompletion", "SquareRootMatrixRegression"]


class SquareRootCompletion(BaseEstimator):
    """Noise-blind completion of an ``m1 x m2`` matrix from single entries.

    Parameters
    ----------
    m1, m2 : grid dimensions of the matrix being completed.
    lam : "theory" for the fully data-driven penalty weight (requires ``a``),
        or a positive float used as-is.  The data-driven weight is honest but
        conservative: below roughly ``min(m1, m2) ~ 1400`` it exceeds 1 and
        the fit collapses to the zero matrix.
    a : known bound on the largest absolute entry of the target; only needed
        with ``lam="theory"``.
    c_star : leading constant of the data-driven weight (Gaussian default).

    Attributes after ``fit``
    ------------------------
    A_ : the completed matrix (m1 x m2).
    lambda_ : penalty weight actually used.
    rank_ : rank of the fit (never exceeds ``1 / lambda_**2``).
    objective_, residual_ : value of the penalized objective and the
        Frobenius distance to the rescaled observation matrix.
    """

    def __init__(self, m1: int, m2: int, lam="theory", a: float | None = None, c_star: float = 6.5):
        self.m1 = m1
        self.m2 = m2
        self.lam = lam
        self.a = a
        self.c_star = c_star

    def fit(self, X, y):
        """Fit from observed cells.

        ``X`` is an (n, 2) integer array of 0-based (row, col) pairs and ``y``
        the corresponding observed values; duplicate cells are allowed.
        """
        dataset = completion_dataset(self.m1, self.m2, X, y)
        if isinstance(self.lam, str):
            if self.lam != "theory":
                raise ValueError(
                    f"lam={self.lam!r} is not available here; pass 'theory' or a float "
                    "(the oracle weight needs the simulation harness)"
                )
            if self.a is None:
                raise ValueError("lam='theory' requires the sup-norm bound a")
            lam = theory_lambda(dataset, self.a, self.c_star)
        else:
            lam = float(self.lam)
        report = estimate(dataset, lam)
        self.A_ = report.A_hat
        self.lambda_ = report.lam
        self.rank_ = report.rank_hat
        self.objective_ = report.objective
        self.residual_ = report.residual_fro
        return self

    def predict(self, X) -> np.ndarray:
        """Values of the completed matrix at the requested (row, col) cells."""
        cells = check_cells(X, self.m1, self.m2)
        return self.A_[cells[:, 0], cells[:, 1]]


class SquareRootMatrixRegression(BaseEstimator):
    """Multivariate regression with a nuclear-norm penalty on the fitted values.

    The penalty weight is a function of the dimensions alone, so no noise
    level is estimated or supplied.  ``fit(X, Y)`` treats ``X`` as the
    ``l x m1`` predictor matrix and ``Y`` as the ``l x m2`` responses.

    Attributes after ``fit``: ``coef_`` (m1 x m2, minimum-Frobenius-norm),
    ``fitted_`` (= X @ coef_), ``lambda_``, ``rank_`` (rank of the fitted
    values) and ``residual_``.
    """

    def __init__(
        self,
        lam: float | None = None,
        alpha: float = 0.1,
        beta: float = 0.5,
        rank_tol: float = RANK_TOL,
    ):
        self.lam = lam
        self.alpha = alpha
        self.beta = beta
        self.rank_tol = rank_tol

    def fit(self, X, Y):
        dataset = regression_dataset(X, Y, self.rank_tol)
        if self.lam is None:
            params = RegressionLambdaParams(alpha=self.alpha, beta=self.beta)
            lam = regression_lambda(dataset.l, dataset.m2, max(dataset.rank_V, 1), params)
        else:
            lam = float(self.lam)
        est = estimate_regression(dataset, lam, self.rank_tol)
        self.coef_ = est.A_hat
        self.fitted_ = est.B_hat
        self.lambda_ = est.lam
        self.rank_ = est.rank_va
        self.residual_ = est.residual
        return self

    def predict(self, X) -> np.ndarray:
        return np.asarray(X, dtype=float) @ self.coef_
