"""Closed-form diagnostic quantities and runtime checks for simulated instances.

Everything here is simulation-side: it needs the ground truth (or the noise
stack, for regression) and computes the quantities that the verification
suites compare against their high-probability envelopes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .completion import CompletionDataset, GroundTruth, accumulate_observations, build_observation_matrix
from .linalg import schatten_norm
from .validation import as_matrix

__all__ = [
    "DiagnosticsRecord",
    "FrobeniusEnvelope",
    "error_matrix",
    "delta_ratios",
    "operator_norm_bound",
    "frobenius_envelope",
    "collision_count",
    "collision_count_pairwise",
    "completion_risk_bound",
    "per_entry_risk_bound",
    "regression_risk_bound",
    "diagnostics",
]


def error_matrix(dataset: CompletionDataset, truth: GroundTruth) -> np.ndarray:
    """Scaled estimation error of the observation matrix, (X - A0) / (m1*m2)."""
    return (build_observation_matrix(dataset) - truth.A0) / dataset.mu2


def delta_ratios(M) -> tuple[float, float]:
    """(delta, delta_inf): operator norm of M and its ratio to the Frobenius norm."""
    Mm = as_matrix(M, "M")
    fro = schatten_norm(Mm, 2)
    if fro == 0.0:
        raise ValueError("M is zero; the operator-to-Frobenius ratio is undefined")
    delta_inf = float(np.linalg.svd(Mm, compute_uv=False)[0])
    return delta_inf / fro, delta_inf


def operator_norm_bound(
    m1: int, m2: int, n: int, sigma: float, a: float, c_star: float = 6.5
) -> float:
    """High-probability bound on the operator norm of the scaled error matrix:
    (c_star * sigma + 2a) * sqrt(2 log(m1+m2) / (min(m1,m2) * n))."""
    if min(m1, m2, n) < 1 or sigma < 0 or a < 0 or c_star <= 0:
        raise ValueError("dimensions must be positive; sigma, a nonnegative; c_star positive")
    return (c_star * sigma + 2.0 * a) * math.sqrt(2.0 * math.log(m1 + m2) / (min(m1, m2) * n))


@dataclass(frozen=True)
class FrobeniusEnvelope:
    """Truth of the three Frobenius-norm envelope clauses.

    (i)   sigma^2/(2n) <= ||M||_F^2 <= 2 * (||A0||_F^2/(n*m1*m2) + sigma^2/n)
    (ii)  ||acc/n||_F^2 >= ||A0||_F^2 / (n*m1*m2)
    (iii) ||M||_F >= ||acc/n||_F / 2
    where acc is the raw per-cell accumulation of the observations.  The
    envelope's own hypothesis 4n <= m1*m2 is reported, not enforced.
    """

    clause_i: bool
    clause_ii: bool
    clause_iii: bool
    hypothesis_ok: bool
    fro2_M: float
    fro2_acc: float


def frobenius_envelope(dataset: CompletionDataset, truth: GroundTruth, sigma: float) -> FrobeniusEnvelope:
    fro2_m = schatten_norm(error_matrix(dataset, truth), 2) ** 2
    fro2_acc = (schatten_norm(accumulate_observations(dataset), 2) / dataset.n) ** 2
    fro2_a0 = schatten_norm(truth.A0, 2) ** 2
    n = dataset.n
    lower = sigma * sigma / (2.0 * n)
    upper = 2.0 * (fro2_a0 / (n * dataset.mu2) + sigma * sigma / n)
    return FrobeniusEnvelope(
        clause_i=lower <= fro2_m <= upper,
        clause_ii=fro2_acc >= fro2_a0 / (n * dataset.mu2),
        clause_iii=math.sqrt(fro2_m) >= 0.5 * math.sqrt(fro2_acc),
        hypothesis_ok=4 * n <= dataset.mu2,
        fro2_M=fro2_m,
        fro2_acc=fro2_acc,
    )


def collision_count(design: np.ndarray) -> int:
    """Number of observation pairs landing on the same cell, via cell counts."""
    cells = np.asarray(design, dtype=np.int64)
    if cells.size == 0:
        return 0
    flat = cells[:, 0] * (cells[:, 1].max() + 1 if cells.size else 1) + cells[:, 1]
    _, counts = np.unique(flat, return_counts=True)
    return int((counts * (counts - 1) // 2).sum())


def collision_count_pairwise(design: np.ndarray) -> int:
    """O(n^2) oracle for :func:`collision_count`; desk scale only (n <= 1000)."""
    cells = np.asarray(design, dtype=np.int64)
    n = cells.shape[0]
    if n > 1000:
        raise ValueError("pairwise collision count is a desk-scale oracle (n <= 1000)")
    total = 0
    for i in range(n):
        same = (cells[i + 1:, 0] == cells[i, 0]) & (cells[i + 1:, 1] == cells[i, 1])
        total += int(same.sum())
    return total


def completion_risk_bound(rank0: int, lam: float, mu2: float, fro_M: float, rho: float) -> float:
    """Closed-form completion risk bound at the true matrix:
    (2*lam*mu2 / (1-rho))^2 * ||M||_F^2 * rank(A0); requires rho < 1."""
    if rho >= 1.0:
        raise ValueError("rho must be below 1")
    if rank0 == 0:
        return 0.0
    return (2.0 * lam * mu2 / (1.0 - rho)) ** 2 * fro_M * fro_M * rank0


def per_entry_risk_bound(
    m1: int, m2: int, n: int, rank0: int, sigma: float, a: float, c_star: float, rho: float
) -> float:
    """Per-entry risk rate: C * max(m1,m2) * rank(A0) * log(m1+m2) / n with
    C = 16 * (2*c_star*sigma^2 + (18 + 2*c_star)*a^2) / (1-rho)^2."""
    if rho >= 1.0:
        raise ValueError("rho must be below 1")
    c_const = 16.0 * (2.0 * c_star * sigma * sigma + (18.0 + 2.0 * c_star) * a * a) / (1.0 - rho) ** 2
    return c_const * max(m1, m2) * rank0 * math.log(m1 + m2) / n


def regression_risk_bound(lam: float, fro_E: float, rank_va0: int, rho: float) -> float:
    """Closed-form regression risk bound at the true matrix:
    (2*lam / (1-rho))^2 * ||E||_F^2 * rank(V A0); requires rho < 1."""
    if rho >= 1.0:
        raise ValueError("rho must be below 1")
    return (2.0 * lam / (1.0 - rho)) ** 2 * fro_E * fro_E * rank_va0


@dataclass(frozen=True)
class DiagnosticsRecord:
    """Per-instance diagnostic bundle consumed by the harness CSV."""

    M: np.ndarray
    delta: float
    delta_inf: float
    fro_M: float
    fro_acc: float    # ||(1/n) * accumulation||_F
    collisions: int
    spikiness: float


def diagnostics(dataset: CompletionDataset, truth: GroundTruth) -> DiagnosticsRecord:
    M = error_matrix(dataset, truth)
    delta, delta_inf = delta_ratios(M)
    return DiagnosticsRecord(
        M=M,
        delta=delta,
        delta_inf=delta_inf,
        fro_M=schatten_norm(M, 2),
        fro_acc=schatten_norm(accumulate_observations(dataset), 2) / dataset.n,
        collisions=collision_count(dataset.design),
        spikiness=truth.spikiness,
    )
