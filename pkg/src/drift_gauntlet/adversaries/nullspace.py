"""Null-space construction of adversarial profiles and their binarization."""

import itertools
import logging

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict
from scipy import linalg

from ..core.models import AdversarialProfile, Provenance
from ..core.windowing import WeightMatrix
from ..errors import BinarizationInfeasible, NoAdversarialExists
from .exact import max_exact_residual, weight_matrix_nullspace

logger = logging.getLogger(__name__)

EPS_RANK = 1e-10
EPS_SOLVE = 1e-9
EPS_DEGENERATE = 1e-12
# Exhaustive binary search is used up to this stream length.
EXHAUSTIVE_LIMIT = 16


class NullspaceBasis(BaseModel):
    """Basis of the difference-row null space."""

    model_config = ConfigDict(frozen=True)

    n: int
    dimension: int
    basis: tuple[tuple[float, ...], ...]
    has_nonconstant: bool
    exact: bool


def _null_directions(A: NDArray[np.float64], eps_rank: float) -> NDArray[np.float64]:
    """Right singular vectors with ``σ <= eps_rank · σ_max``, smallest last."""
    _, s, vt = linalg.svd(A, full_matrices=True)
    sigma = np.zeros(A.shape[1])
    sigma[: s.size] = s
    cutoff = eps_rank * (sigma.max() if sigma.size else 0.0)
    return np.asarray(vt[sigma <= cutoff], dtype=np.float64)


def solve_nullspace(W: WeightMatrix, eps_rank: float = EPS_RANK) -> AdversarialProfile:
    """Solve ``W v = 0`` (all-ones row included) and min-max normalize.

    The returned profile satisfies ``|W_diff v|_inf <= EPS_SOLVE``; the
    ones row only excludes constants from the solve.

    Raises:
        NoAdversarialExists: If only constant profiles satisfy the difference rows.
    """
    directions = _null_directions(W.to_dense(include_ones=True), eps_rank)
    logger.info(
        "null space of %d x %d matrix: dimension %d", W.n_rows, W.n, len(directions)
    )
    if len(directions) == 0:
        raise NoAdversarialExists(
            f"the {len(W.pairs)} window pairs on n={W.n} only admit constant profiles"
        )

    v = directions[-1]
    spread = float(v.max() - v.min())
    if spread <= EPS_DEGENERATE:
        raise NoAdversarialExists("null-space direction is numerically constant")
    v = np.clip((v - v.min()) / spread, 0.0, 1.0)

    residual = float(np.abs(W.difference_rows() @ v).max(initial=0.0))
    if residual > EPS_SOLVE:
        raise NoAdversarialExists(
            f"null-space solve did not converge (residual {residual:.3g})"
        )
    return AdversarialProfile.from_array(v, Provenance(kind="nullspace_solve"))


def nullspace_basis(
    W: WeightMatrix, exact: bool = False, eps_rank: float = EPS_RANK
) -> NullspaceBasis:
    """Basis of the difference rows' null space; constants always belong to it."""
    if exact:
        vectors = [tuple(float(x) for x in b) for b in weight_matrix_nullspace(W)]
    else:
        directions = _null_directions(W.difference_rows(), eps_rank)
        vectors = [tuple(float(x) for x in d) for d in directions]
    return NullspaceBasis(
        n=W.n,
        dimension=len(vectors),
        basis=tuple(vectors),
        has_nonconstant=len(vectors) > 1,
        exact=exact,
    )


def _is_certified(W: WeightMatrix, b: NDArray[np.float64]) -> bool:
    return bool(b.min() != b.max()) and max_exact_residual(W, b.tolist()) == 0


def _greedy_repair(
    W: WeightMatrix, b: NDArray[np.float64], max_iter: int
) -> tuple[NDArray[np.float64], int]:
    """Flip the entry that most reduces the total residual until none helps."""
    D = W.difference_rows()
    b = b.copy()
    r = D @ b
    flips = 0
    for _ in range(max_iter):
        total = float(np.abs(r).sum())
        if total <= EPS_DEGENERATE:
            break
        step = 1.0 - 2.0 * b
        candidates = r[:, None] + D * step[None, :]
        totals = np.abs(candidates).sum(axis=0)
        # flips that would leave a constant vector are not drift
        ones = int(b.sum())
        if ones == 1:
            totals[b == 1.0] = np.inf
        if ones == b.size - 1:
            totals[b == 0.0] = np.inf
        j = int(np.argmin(totals))
        if totals[j] >= total - EPS_DEGENERATE:
            break
        b[j] = 1.0 - b[j]
        r = candidates[:, j]
        flips += 1
    return b, flips


def _exhaustive_search(
    W: WeightMatrix, start: NDArray[np.float64]
) -> NDArray[np.float64] | None:
    """Closest non-constant binary null-space member to ``start``."""
    n = W.n
    D = W.difference_rows()
    grid = np.array(list(itertools.product((0.0, 1.0), repeat=n)))
    grid = grid[(grid.min(axis=1) != grid.max(axis=1))]
    feasible = np.abs(grid @ D.T).max(axis=1, initial=0.0) <= EPS_DEGENERATE
    candidates = grid[feasible]
    if candidates.size == 0:
        return None
    order = np.argsort(np.abs(candidates - start).sum(axis=1), kind="stable")
    for k in order:
        if _is_certified(W, candidates[k]):
            return np.asarray(candidates[k])
    return None


def binarize_profile(
    profile: AdversarialProfile,
    W: WeightMatrix,
    max_iter: int | None = None,
    allow_fractional: bool = False,
) -> AdversarialProfile:
    """Round a profile to {0, 1} while keeping an exact zero residual.

    Rounds at 0.5, then greedily flips entries that reduce the total
    residual. Streams of up to ``EXHAUSTIVE_LIMIT`` samples fall back to an
    exhaustive search for the closest feasible binary vector.

    Args:
        profile: Profile to binarize, length ``W.n``
        W: Weight matrix the result must annihilate
        max_iter: Flip budget, defaults to ``W.n``
        allow_fractional: Return a mixed profile instead of raising when no
            binary vector works; fractional positions are listed in the
            provenance

    Raises:
        BinarizationInfeasible: No non-constant binary vector satisfies ``W``.
    """
    if profile.n != W.n:
        raise ValueError(f"profile has length {profile.n}, matrix expects {W.n}")
    v = profile.array
    rounded = (v >= 0.5).astype(np.float64)

    if _is_certified(W, rounded):
        result: NDArray[np.float64] | None = rounded
    else:
        repaired, flips = _greedy_repair(W, rounded, max_iter or W.n)
        logger.info("binarization: %d greedy flips", flips)
        result = repaired if _is_certified(W, repaired) else None
        if result is None and W.n <= EXHAUSTIVE_LIMIT:
            result = _exhaustive_search(W, rounded)

    if result is not None:
        provenance = profile.provenance.model_copy(
            update={"binarized": True, "fractional_indices": ()}
        )
        return AdversarialProfile.from_array(result, provenance).model_copy(
            update={"exact": True}
        )

    if allow_fractional:
        snapped = np.where(np.abs(v - np.round(v)) <= EPS_SOLVE, np.round(v), v)
        residual = float(np.abs(W.difference_rows() @ snapped).max(initial=0.0))
        if residual <= EPS_SOLVE and snapped.min() != snapped.max():
            off_grid = np.flatnonzero(snapped != np.round(snapped))
            fractional = tuple(int(i) for i in off_grid)
            provenance = profile.provenance.model_copy(
                update={"binarized": False, "fractional_indices": fractional}
            )
            return AdversarialProfile.from_array(snapped, provenance)

    raise BinarizationInfeasible(
        f"no non-constant binary profile of length {W.n} satisfies the window pairs"
    )
