"""Matrix completion under uniform-at-random single-entry sampling.

Observations are ``y_i = A0[row_i, col_i] + sigma * xi_i`` with cells drawn
i.i.d. uniformly (with replacement) from the grid.  The one-hot design
matrices are never materialized; a design is just an ``(n, 2)`` integer array
of cells.  The estimator shrinks the singular values of the rescaled
observation matrix with the square-root spectral solver, so its penalty
weight needs no knowledge of the noise level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import RANK_TOL, schatten_norm, sup_norm, svd_factors
from .shrinkage import soft_threshold, solve_sqrt_shrinkage
from .validation import as_matrix, as_vector, check_cells, ensure_rng

__all__ = [
    "NoiseSpec",
    "GroundTruth",
    "CompletionDataset",
    "EstimateReport",
    "HypothesisReport",
    "sample_design",
    "synthesize",
    "ground_truth",
    "random_ground_truth",
    "completion_dataset",
    "build_observation_matrix",
    "accumulate_observations",
    "theory_lambda",
    "oracle_lambda",
    "estimate",
    "baseline_known_sigma",
    "check_hypotheses",
    "read_observations",
    "write_observations",
]

NOISE_LAWS = ("gaussian", "rademacher", "uniform")


@dataclass(frozen=True)
class NoiseSpec:
    """Noise law for synthesis: mean 0, unit variance before scaling by sigma.

    ``subgauss_k`` is the sub-Gaussian mgf constant of the standardized law;
    it is carried for reporting only and never used by the estimator.
    """

    sigma: float
    law: str = "gaussian"
    subgauss_k: float = 1.0

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")
        if self.law not in NOISE_LAWS:
            raise ValueError(f"unknown noise law {self.law!r}; expected one of {NOISE_LAWS}")

    def draw(self, rng: np.random.Generator, size) -> np.ndarray:
        """Standardized draws (mean 0, variance 1); ``size`` may be a shape tuple."""
        if self.law == "gaussian":
            return rng.standard_normal(size)
        if self.law == "rademacher":
            return rng.integers(0, 2, size=size).astype(float) * 2.0 - 1.0
        half_width = math.sqrt(3.0)
        return rng.uniform(-half_width, half_width, size=size)


@dataclass(frozen=True)
class GroundTruth:
    """Simulated target matrix with its scale and concentration summaries."""

    A0: np.ndarray
    rank: int
    a: float          # known bound on the sup-norm, >= sup_norm(A0)
    spikiness: float  # sqrt(m1*m2) * sup_norm(A0) / ||A0||_F, in [1, sqrt(m1*m2)]


def ground_truth(A0, a: float | None = None, rank_tol: float = RANK_TOL) -> GroundTruth:
    """Wrap a known matrix, deriving rank, sup-norm bound and spikiness."""
    M = as_matrix(A0, "A0")
    fro = schatten_norm(M, 2)
    sup = sup_norm(M)
    if a is None:
        a = sup
    elif a < sup:
        raise ValueError(f"a={a} is below sup_norm(A0)={sup}")
    if fro == 0.0:
        rank, spik = 0, 0.0
    else:
        s = np.linalg.svd(M, compute_uv=False)
        rank = int((s > rank_tol * s[0]).sum())
        spik = math.sqrt(M.shape[0] * M.shape[1]) * sup / fro
    return GroundTruth(A0=M, rank=rank, a=float(a), spikiness=spik)


def random_ground_truth(m1: int, m2: int, rank: int, a: float, rng) -> GroundTruth:
    """Generic low-rank truth: product of standard-normal factors, rescaled
    so the largest absolute entry equals ``a``."""
    if rank < 1 or rank > min(m1, m2):
        raise ValueError("rank must be in [1, min(m1, m2)]")
    if a <= 0:
        raise ValueError("a must be positive")
    rng = ensure_rng(rng)
    A0 = rng.standard_normal((m1, rank)) @ rng.standard_normal((rank, m2))
    A0 *= a / np.abs(A0).max()
    return ground_truth(A0, a=a)


@dataclass(frozen=True)
class CompletionDataset:
    """Observed entries of an m1 x m2 matrix, duplicates permitted."""

    m1: int
    m2: int
    design: np.ndarray  # (n, 2) int64 cells
    y: np.ndarray       # (n,) observed values

    @property
    def n(self) -> int:
        return self.y.size

    @property
    def mu2(self) -> int:
        return self.m1 * self.m2


def completion_dataset(m1: int, m2: int, design, y) -> CompletionDataset:
    if m1 < 1 or m2 < 1:
        raise ValueError("m1 and m2 must be positive")
    cells = check_cells(design, m1, m2)
    values = as_vector(y, "y")
    if values.size != cells.shape[0]:
        raise ValueError(f"{values.size} observations for {cells.shape[0]} design cells")
    return CompletionDataset(m1=m1, m2=m2, design=cells, y=values)


def sample_design(m1: int, m2: int, n: int, rng) -> np.ndarray:
    """n cells drawn i.i.d. uniformly (with replacement) over the grid."""
    if m1 < 1 or m2 < 1 or n < 0:
        raise ValueError("m1, m2 must be >= 1 and n >= 0")
    rng = ensure_rng(rng)
    flat = rng.integers(0, m1 * m2, size=n)
    return np.column_stack([flat // m2, flat % m2]).astype(np.int64)


def synthesize(truth: GroundTruth, noise: NoiseSpec, design, rng) -> CompletionDataset:
    """Observations ``y_i = A0[cell_i] + sigma * xi_i`` from the given stream."""
    m1, m2 = truth.A0.shape
    cells = check_cells(design, m1, m2)
    rng = ensure_rng(rng)
    values = truth.A0[cells[:, 0], cells[:, 1]] + noise.sigma * noise.draw(rng, cells.shape[0])
    return CompletionDataset(m1=m1, m2=m2, design=cells, y=values)


def accumulate_observations(dataset: CompletionDataset) -> np.ndarray:
    """Unscaled accumulation: entry (j, k) sums the observations at cell (j, k)."""
    acc = np.zeros((dataset.m1, dataset.m2))
    np.add.at(acc, (dataset.design[:, 0], dataset.design[:, 1]), dataset.y)
    return acc


def build_observation_matrix(dataset: CompletionDataset) -> np.ndarray:
    """The rescaled observation matrix (mu2 / n) * sum of observations per cell.

    Under uniform sampling its expectation is the target matrix.  An empty
    dataset yields the zero matrix.
    """
    if dataset.n == 0:
        return np.zeros((dataset.m1, dataset.m2))
    return accumulate_observations(dataset) * (dataset.mu2 / dataset.n)


@dataclass(frozen=True)
class EstimateReport:
    """Estimator output plus the certificates tests rely on."""

    A_hat: np.ndarray
    lam: float
    rank_hat: int
    objective: float     # ||A_hat - X||_F + lam * nuclear(A_hat)
    residual_fro: float  # ||A_hat - X||_F


def theory_lambda(dataset: CompletionDataset, a: float, c_star: float = 6.5) -> float:
    """Fully data-driven penalty weight; conservative at small dimensions.

    Needs at least one nonzero observation (the second term divides by the
    Frobenius norm of the raw accumulation).
    """
    if a <= 0 or c_star <= 0:
        raise ValueError("a and c_star must be positive")
    fro_acc = schatten_norm(accumulate_observations(dataset), 2) if dataset.n else 0.0
    if fro_acc == 0.0:
        raise ValueError(
            "all observations are zero; the data-driven penalty is undefined -- "
            "use the oracle or a manual penalty weight instead"
        )
    m = dataset.m1 + dataset.m2
    m_min = min(dataset.m1, dataset.m2)
    log_m = math.log(m)
    return 2.0 * c_star * math.sqrt(log_m / m_min) + 4.0 * a * math.sqrt(
        2.0 * dataset.n * log_m / m_min
    ) / fro_acc


def oracle_lambda(dataset: CompletionDataset, truth: GroundTruth) -> float:
    """Simulation-only penalty: three times the operator-to-Frobenius ratio of
    the scaled estimation error of the observation matrix (minimal weight that
    meets the oracle inequality's hypothesis with equality)."""
    M = (build_observation_matrix(dataset) - truth.A0) / dataset.mu2
    fro = schatten_norm(M, 2)
    if fro == 0.0:
        raise ValueError("observation matrix reproduces the truth exactly; oracle penalty undefined")
    # parenthesized as 3 * (ratio) so the hypothesis check recovers equality bit-exactly
    return 3.0 * (float(np.linalg.svd(M, compute_uv=False)[0]) / fro)


def estimate(dataset: CompletionDataset, lam: float) -> EstimateReport:
    """Square-root spectral estimator: shrink the singular values of the
    observation matrix at weight ``lam`` (no noise-level input)."""
    if lam <= 0:
        raise ValueError("lam must be positive")
    X = build_observation_matrix(dataset)
    f = svd_factors(X)
    sol = solve_sqrt_shrinkage(f.singulars, lam, 0.0)
    A_hat = (f.left * sol.s) @ f.right.T
    return EstimateReport(
        A_hat=A_hat,
        lam=float(lam),
        rank_hat=sol.retained,
        objective=sol.objective,
        residual_fro=sol.radius,
    )


def baseline_known_sigma(
    dataset: CompletionDataset, sigma: float, a: float, c_star: float = 6.5
) -> np.ndarray:
    """Noise-level-dependent competitor: soft-threshold the singular values of
    the observation matrix at tau = mu2 * lam_kt / 2, where lam_kt is three
    times the high-probability operator-norm bound on the scaled error."""
    if sigma <= 0:
        raise ValueError("the baseline requires a known positive sigma")
    m = dataset.m1 + dataset.m2
    m_min = min(dataset.m1, dataset.m2)
    lam_kt = 3.0 * (c_star * sigma + 2.0 * a) * math.sqrt(2.0 * math.log(m) / (m_min * dataset.n))
    tau = dataset.mu2 * lam_kt / 2.0
    f = svd_factors(build_observation_matrix(dataset))
    return (f.left * soft_threshold(f.singulars, tau)) @ f.right.T


@dataclass(frozen=True)
class HypothesisReport:
    """Facts about a simulated instance; never aborts, only reports.

    ``sample_size_ok``: n exceeds 8 * min(m1, m2) * log^2(m1 + m2).
    ``density_ok``: 4n <= m1 * m2.
    ``rho_min``: smallest rho compatible with the spikiness/rank trade-off
    (infeasible when >= 1).
    ``lambda_ok``: the penalty dominates three times the error ratio delta.
    ``rho``: lam * sqrt(2 * rank(A0)), the strict contraction factor;
    ``rho_weak`` drops the factor 2 (used by the residual lower bound).
    """

    sample_size_ok: bool
    sample_size_threshold: float
    density_ok: bool
    density_margin: int
    rho_min: float
    rho_min_ok: bool
    lambda_ok: bool
    lambda_margin: float
    delta: float
    rho: float
    rho_ok: bool
    rho_weak: float
    rho_weak_ok: bool


def check_hypotheses(
    dataset: CompletionDataset, truth: GroundTruth, lam: float, c_star: float = 6.5
) -> HypothesisReport:
    m = dataset.m1 + dataset.m2
    m_min = min(dataset.m1, dataset.m2)
    log_m = math.log(m)
    threshold = 8.0 * m_min * log_m * log_m
    fro_a0 = schatten_norm(truth.A0, 2)
    if truth.rank == 0 or fro_a0 == 0.0:
        rho_min = 0.0
    else:
        rho_min = math.sqrt(truth.rank) * (
            2.0 * c_star * math.sqrt(log_m / m_min)
            + (4.0 * truth.a * math.sqrt(dataset.mu2) / fro_a0) * math.sqrt(2.0 * log_m / m_min)
        )
    M = (build_observation_matrix(dataset) - truth.A0) / dataset.mu2
    fro_m = schatten_norm(M, 2)
    delta = float(np.linalg.svd(M, compute_uv=False)[0]) / fro_m if fro_m > 0 else 0.0
    rho = lam * math.sqrt(2.0 * truth.rank)
    rho_weak = lam * math.sqrt(truth.rank)
    return HypothesisReport(
        sample_size_ok=dataset.n > threshold,
        sample_size_threshold=threshold,
        density_ok=4 * dataset.n <= dataset.mu2,
        density_margin=dataset.mu2 - 4 * dataset.n,
        rho_min=rho_min,
        rho_min_ok=rho_min < 1.0,
        # relative slack so the oracle weight, defined as exactly 3*delta, qualifies
        lambda_ok=lam >= 3.0 * delta * (1.0 - 1e-12),
        lambda_margin=lam - 3.0 * delta,
        delta=delta,
        rho=rho,
        rho_ok=rho < 1.0,
        rho_weak=rho_weak,
        rho_weak_ok=rho_weak < 1.0,
    )


def write_observations(dataset: CompletionDataset, path) -> None:
    """CSV lines ``row,col,value`` (0-based cells); dimensions travel out of band."""
    with open(path, "w", encoding="ascii") as fh:
        for (r, c), v in zip(dataset.design, dataset.y):
            fh.write(f"{r},{c},{float(v)!r}\n")


def read_observations(path, m1: int, m2: int) -> CompletionDataset:
    rows, cols, values = [], [], []
    with open(path, "r", encoding="ascii") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise ValueError(f"{path}:{line_no}: expected 'row,col,value', got {line!r}")
            rows.append(int(parts[0]))
            cols.append(int(parts[1]))
            values.append(float(parts[2]))
    design = np.column_stack([rows, cols]) if rows else np.empty((0, 2), dtype=np.int64)
    return completion_dataset(m1, m2, design, np.asarray(values))
