"""Kernel matrices and the biased MMD² in weight-vector form.

Optimized for repeated use on sub-blocks of one stream: squared distances
are computed once and sliced per window pair.
"""

from collections.abc import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.spatial.distance import pdist, squareform

from ..errors import DimensionMismatch
from .models import KernelSpec


def as_points(X: ArrayLike | Sequence[Sequence[float]]) -> NDArray[np.float64]:
    """Coerce ``X`` to an ``(m, d)`` float array; scalars become 1-D points."""
    try:
        arr = np.asarray(X, dtype=np.float64)
    except ValueError as e:
        raise DimensionMismatch("points do not share a common dimension") from e
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a list of points, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise ValueError("kernel matrix needs at least one point")
    return arr


def median_bandwidth(sq_dists: NDArray[np.float64]) -> float:
    """Median of the non-zero pairwise distances; 1.0 if all points coincide.

    Args:
        sq_dists: Square matrix of squared Euclidean distances
    """
    upper = sq_dists[np.triu_indices(sq_dists.shape[0], k=1)]
    positive = upper[upper > 0]
    if positive.size == 0:
        return 1.0
    return float(np.median(np.sqrt(positive)))


def squared_distances(X: NDArray[np.float64]) -> NDArray[np.float64]:
    if X.shape[0] == 1:
        return np.zeros((1, 1))
    return np.asarray(squareform(pdist(X, "sqeuclidean")), dtype=np.float64)


def rbf_from_squared(
    sq_dists: NDArray[np.float64], bandwidth: float
) -> NDArray[np.float64]:
    return np.exp(-sq_dists / (2.0 * bandwidth**2))


def kernel_matrix(
    X: ArrayLike | Sequence[Sequence[float]], spec: KernelSpec | None = None
) -> NDArray[np.float64]:
    """Kernel matrix ``K_ij = k(x_i, x_j)``.

    RBF entries are ``exp(-|x_i - x_j|² / (2h²))``; with no fixed bandwidth
    ``h`` is the median heuristic over ``X``.

    Raises:
        DimensionMismatch: If the points have different dimensions.
    """
    spec = spec or KernelSpec()
    points = as_points(X)
    if spec.kind == "linear":
        return points @ points.T
    sq = squared_distances(points)
    bandwidth = spec.bandwidth or median_bandwidth(sq)
    return rbf_from_squared(sq, bandwidth)


def mmd2_weighted(
    w: NDArray[np.float64],
    K: NDArray[np.float64],
    index: NDArray[np.intp] | None = None,
) -> float:
    """Biased MMD² as ``wᵀKw``, clamped at zero.

    Args:
        w: Difference vector of a pair restricted to the pair's samples
        K: Kernel matrix over those samples, or over a larger set when
           ``index`` selects the pair's rows and columns
        index: Optional positions of the pair's samples inside ``K``
    """
    if index is not None:
        K = K[np.ix_(index, index)]
    return max(float(w @ K @ w), 0.0)


def mmd2_direct(K: NDArray[np.float64], m1: int) -> float:
    """Biased MMD² from block means: ``mean(Kxx) + mean(Kyy) - 2 mean(Kxy)``."""
    kxx = K[:m1, :m1].mean()
    kyy = K[m1:, m1:].mean()
    kxy = K[:m1, m1:].mean()
    return max(float(kxx + kyy - 2.0 * kxy), 0.0)
