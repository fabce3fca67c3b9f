"""Dense linear-algebra primitives: SVD, Schatten norms, projectors, min-norm solves.

Everything operates on plain float64 numpy arrays.  All functions are pure;
returned objects are safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .validation import as_matrix

__all__ = [
    "RANK_TOL",
    "SvdFactors",
    "ColumnSpaceProjector",
    "svd_factors",
    "schatten_norm",
    "sup_norm",
    "column_projector",
    "min_norm_solve",
    "read_matrix_csv",
    "write_matrix_csv",
]

# Relative singular-value cutoff used everywhere a numerical rank is needed.
RANK_TOL = 1e-10


@dataclass(frozen=True)
class SvdFactors:
    """Thin SVD of a matrix: ``left @ diag(singulars) @ right.T``."""

    left: np.ndarray       # (m1, p), orthonormal columns
    singulars: np.ndarray  # (p,), nonincreasing, >= 0
    right: np.ndarray      # (m2, p), orthonormal columns

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.singulars) @ self.right.T


@dataclass(frozen=True)
class ColumnSpaceProjector:
    """Orthogonal projector onto the column space of a matrix.

    ``basis`` holds ``rank`` orthonormal columns spanning the space; the
    all-zero matrix yields ``rank == 0`` and the zero map.
    """

    basis: np.ndarray  # (l, rank)
    rank: int

    def apply(self, B: np.ndarray) -> np.ndarray:
        if self.rank == 0:
            return np.zeros_like(np.asarray(B, dtype=float))
        return self.basis @ (self.basis.T @ B)

    def complement(self, B: np.ndarray) -> np.ndarray:
        return np.asarray(B, dtype=float) - self.apply(B)


def svd_factors(A) -> SvdFactors:
    """Thin SVD taken along the smaller dimension.

    Raises ``numpy.linalg.LinAlgError`` if the underlying iteration does not
    converge; never returns unverified factors.
    """
    M = as_matrix(A)
    try:
        left, s, right_t = np.linalg.svd(M, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(f"SVD did not converge for a {M.shape} matrix: {exc}") from exc
    return SvdFactors(left=left, singulars=s, right=right_t.T)


def schatten_norm(A, q) -> float:
    """Schatten-q norm for q in {1, 2, inf}.

    q=2 is the Frobenius norm and is computed entrywise without an SVD;
    q=1 sums the singular values; q=inf is the largest singular value.
    """
    M = as_matrix(A)
    if q == 2:
        return float(np.sqrt((M * M).sum()))
    if q == 1:
        return float(np.linalg.svd(M, compute_uv=False).sum())
    if q == np.inf or q == float("inf"):
        return float(np.linalg.svd(M, compute_uv=False)[0])
    raise ValueError(f"unsupported Schatten index q={q!r}; expected 1, 2 or inf")


def sup_norm(A) -> float:
    """Largest entry in absolute value."""
    return float(np.abs(as_matrix(A)).max())


def column_projector(V, rank_tol: float = RANK_TOL) -> ColumnSpaceProjector:
    """Orthogonal projector onto col(V), with numerical rank at ``rank_tol``."""
    M = as_matrix(V, "V")
    if rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    f = svd_factors(M)
    top = f.singulars[0] if f.singulars.size else 0.0
    if top == 0.0:
        rank = 0
    else:
        rank = int((f.singulars > rank_tol * top).sum())
    return ColumnSpaceProjector(basis=f.left[:, :rank], rank=rank)


def min_norm_solve(V, B, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Minimum-Frobenius-norm solution A of V @ A = B.

    Every column of B must lie in col(V); a column outside it (beyond
    ``1e-8 * (1 + ||B||_F)`` in residual) raises ``ValueError`` naming the
    offending column.
    """
    Vm = as_matrix(V, "V")
    Bm = as_matrix(B, "B")
    if Vm.shape[0] != Bm.shape[0]:
        raise ValueError(f"row mismatch: V has {Vm.shape[0]} rows, B has {Bm.shape[0]}")
    f = svd_factors(Vm)
    top = f.singulars[0] if f.singulars.size else 0.0
    rank = int((f.singulars > rank_tol * top).sum()) if top > 0.0 else 0
    if rank == 0:
        A = np.zeros((Vm.shape[1], Bm.shape[1]))
    else:
        coeff = (f.left[:, :rank].T @ Bm) / f.singulars[:rank, None]
        A = f.right[:, :rank] @ coeff
    residual = Vm @ A - Bm
    tol = 1e-8 * (1.0 + schatten_norm(Bm, 2))
    if np.sqrt((residual * residual).sum()) > tol:
        col_err = np.sqrt((residual * residual).sum(axis=0))
        worst = int(np.argmax(col_err))
        raise ValueError(
            f"column {worst} of B lies outside the column space of V "
            f"(residual {col_err[worst]:.3e}, tolerance {tol:.3e})"
        )
    return A


def write_matrix_csv(A, path) -> None:
    """Write a dense matrix as header-less CSV; %.17g round-trips float64 exactly."""
    np.savetxt(path, as_matrix(A), fmt="%.17g", delimiter=",")


def read_matrix_csv(path) -> np.ndarray:
    """Read a dense matrix written by :func:`write_matrix_csv`."""
    return as_matrix(np.loadtxt(path, delimiter=",", dtype=float, ndmin=2), "matrix file")
