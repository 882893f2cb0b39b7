"""Classical multidimensional scaling of a distance matrix."""
from __future__ import annotations

import numpy as np


def classical_mds(dist: np.ndarray, out_dims: int = 2) -> np.ndarray:
    """Embed a symmetric distance matrix via double centering.

    Returns (n, out_dims) coordinates from the top eigenpairs of the Gram
    matrix; directions with non-positive eigenvalues come out as zeros.
    Column signs are fixed so the largest-magnitude entry is positive.
    """
    d = np.asarray(dist, dtype=float)
    n = d.shape[0]
    if d.shape != (n, n):
        raise ValueError(f"distance matrix must be square, got {d.shape}")
    j = np.eye(n) - np.ones((n, n)) / n
    gram = -0.5 * j @ (d ** 2) @ j
    evals, evecs = np.linalg.eigh(gram)
    order = np.argsort(evals)[::-1]
    coords = np.zeros((n, out_dims))
    for col, idx in enumerate(order[:out_dims]):
        if evals[idx] <= 0:
            break
        axis = evecs[:, idx] * np.sqrt(evals[idx])
        if abs(axis.min()) > abs(axis.max()):
            axis = -axis
        coords[:, col] = axis
    return coords
