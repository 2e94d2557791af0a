"""Vectorized descent counts for stacks of (signed) permutations.

These are the family rules of :mod:`.elements` applied to whole arrays; the
test suite checks them row by row against the scalar implementation.
"""

import numpy as np


def inverse_rows(w: np.ndarray) -> np.ndarray:
    """Row-wise inverse of one-line (signed) permutations with entries ``±1..±n``."""
    n = w.shape[1]
    absw = np.abs(w).astype(np.intp) - 1
    vals = np.broadcast_to(np.arange(1, n + 1, dtype=w.dtype), w.shape)
    out = np.empty_like(w)
    np.put_along_axis(out, absw, np.where(w < 0, -vals, vals), axis=1)
    return out


def right_descent_counts(family: str, w: np.ndarray) -> np.ndarray:
    d = np.count_nonzero(w[:, :-1] > w[:, 1:], axis=1)
    if family == "B":
        d += w[:, 0] < 0
    elif family == "D":
        d += (w[:, 0].astype(np.int32) + w[:, 1]) < 0
    return d


def two_sided_counts(family: str, w: np.ndarray) -> np.ndarray:
    """``des(w) + des(w^-1)`` for every row of ``w`` (families A, B, D)."""
    return right_descent_counts(family, w) + right_descent_counts(family, inverse_rows(w))
