"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np

__all__ = ["as_matrix", "as_vector", "check_nonincreasing", "check_cells", "ensure_rng"]


def as_matrix(A, name: str = "A") -> np.ndarray:
    """Coerce to a finite 2-d float64 array with at least one row and column."""
    M = np.asarray(A, dtype=float)
    if M.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got ndim={M.ndim}")
    if M.shape[0] < 1 or M.shape[1] < 1:
        raise ValueError(f"{name} must have at least one row and one column, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} contains non-finite entries")
    return M


def as_vector(x, name: str = "x") -> np.ndarray:
    """Coerce to a finite 1-d float64 array (possibly empty)."""
    v = np.asarray(x, dtype=float).ravel() if np.ndim(x) <= 1 else None
    if v is None:
        raise ValueError(f"{name} must be 1-dimensional")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} contains non-finite entries")
    return v


def check_nonincreasing(x: np.ndarray, name: str = "sigma") -> None:
    if x.size > 1 and np.any(x[1:] > x[:-1]):
        raise ValueError(f"{name} must be sorted in nonincreasing order")


def check_cells(cells, m1: int, m2: int) -> np.ndarray:
    """Coerce to an (n, 2) integer array of 0-based (row, col) pairs inside the grid."""
    c = np.asarray(cells, dtype=np.int64)
    if c.size == 0:
        return c.reshape(0, 2)
    if c.ndim != 2 or c.shape[1] != 2:
        raise ValueError(f"design cells must have shape (n, 2), got {c.shape}")
    if c[:, 0].min() < 0 or c[:, 0].max() >= m1 or c[:, 1].min() < 0 or c[:, 1].max() >= m2:
        raise ValueError(f"design cells out of range for a {m1}x{m2} grid")
    return c


def ensure_rng(seed) -> np.random.Generator:
    """Accept a Generator, a SeedSequence, or plain integer entropy."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
