"""Exact rational arithmetic for residual certificates and null spaces.

Floats are converted with ``Fraction(x)``, which is exact, so a float
profile with entries in {0, 1/2, 1} certifies to an exact zero residual.
"""

from collections.abc import Iterable, Sequence
from fractions import Fraction

from ..core.windowing import WeightMatrix


def to_fractions(values: Iterable[float | Fraction | int]) -> list[Fraction]:
    return [x if isinstance(x, Fraction) else Fraction(x) for x in values]


def exact_residuals(W: WeightMatrix, v: Sequence[float | Fraction]) -> list[Fraction]:
    """``row · v`` for every difference row, computed from prefix sums."""
    if len(v) != W.n:
        raise ValueError(f"profile has length {len(v)}, matrix expects {W.n}")
    prefix = [Fraction(0)]
    for x in to_fractions(v):
        prefix.append(prefix[-1] + x)
    return [
        (prefix[p.e1] - prefix[p.s1]) / p.m1 - (prefix[p.e2] - prefix[p.s2]) / p.m2
        for p in W.pairs
    ]


def max_exact_residual(W: WeightMatrix, v: Sequence[float | Fraction]) -> Fraction:
    return max((abs(r) for r in exact_residuals(W, v)), default=Fraction(0))


def row_echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form by Gauss-Jordan elimination.

    Returns:
        The non-zero rows of the reduced matrix and their pivot columns
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    piv_r = 0
    for piv_c in range(n_cols):
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c] != 0:
                break
        else:
            continue
        m[piv_r], m[i_row] = m[i_row], m[piv_r]
        fp = m[piv_r][piv_c]
        m[piv_r] = [x / fp for x in m[piv_r]]
        for r in range(n_rows):
            fr = m[r][piv_c]
            if r == piv_r or fr == 0:
                continue
            m[r] = [a - fr * b for a, b in zip(m[r], m[piv_r], strict=True)]
        pivots.append(piv_c)
        piv_r += 1
        if piv_r == n_rows:
            break
    return m[:piv_r], pivots


def rational_nullspace(rows: list[list[Fraction]], n_cols: int) -> list[list[Fraction]]:
    """Exact basis of ``{x : A x = 0}``, one vector per free column."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(n_cols)] for j in range(n_cols)]
    reduced, pivots = row_echelon(rows)
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * n_cols
        x[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = -reduced[r][f]
        basis.append(x)
    return basis


def weight_matrix_nullspace(
    W: WeightMatrix, include_ones: bool = False
) -> list[list[Fraction]]:
    """Exact null space of the difference rows (plus the ones row if asked)."""
    rows = [list(r) for r in W.to_fractions(include_ones=include_ones)]
    return rational_nullspace(rows, W.n)
