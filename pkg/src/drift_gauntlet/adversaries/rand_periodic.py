"""Random head followed by an l-periodic tail of the same mean."""

import logging
from collections.abc import Sequence
from typing import Any

import numpy as np
from numpy.typing import NDArray

from ..core.models import AdversarialProfile, FixedReference, Provenance, WindowScheme
from ..core.windowing import build_weight_matrix
from ..errors import EmptyScheme, NoFeasibleDuty
from .base import BaseFamily
from .exact import max_exact_residual

logger = logging.getLogger(__name__)


def feasible_head_ones(a: int, l: int) -> int:
    """Head ones ``k`` closest to ``a/2`` with ``l·k/a`` integral (ties: smaller k).

    Raises:
        NoFeasibleDuty: If no ``k`` in ``[1, a-1]`` qualifies.
    """
    candidates = [k for k in range(1, a) if (l * k) % a == 0]
    if not candidates:
        raise NoFeasibleDuty(
            f"no head duty in [1, {a - 1}] makes l*k/a integral (a={a}, l={l})"
        )
    return min(candidates, key=lambda k: (abs(2 * k - a), k))


def _is_periodic(v: NDArray[np.float64], l: int) -> bool:
    return bool(np.array_equal(v[:-l], v[l:]))


def _blinds(v: NDArray[np.float64], scheme: WindowScheme) -> bool:
    try:
        W = build_weight_matrix(scheme, len(v))
    except EmptyScheme:
        return False
    return max_exact_residual(W, v.tolist()) == 0


def gen_rand_periodic(
    a: int,
    l: int,
    n: int,
    rng: np.random.Generator,
    visible_to: Sequence[WindowScheme] = (),
) -> AdversarialProfile:
    """Binary head with mean ``k/a``, then an l-periodic tail of equal mean.

    The head is two runs (``k`` ones, ``a-k`` zeros) in random order. Each tail
    period holds a single run of ``m`` ones starting at a random phase. Phases
    whose whole stream is l-periodic are skipped so the family never
    degenerates into a plain square wave, and so are phases that leave a zero
    exact residual against any scheme in ``visible_to``.
    """
    if not 0 < a < n:
        raise ValueError(f"need 0 < a < n, got a={a}, n={n}")
    if not 1 <= l <= n - a:
        raise ValueError(f"need 1 <= l <= n - a, got l={l}, n={n}, a={a}")
    k = feasible_head_ones(a, l)
    m = l * k // a

    ones_first = bool(rng.integers(2))
    head = np.repeat([1.0, 0.0], [k, a - k])
    if not ones_first:
        head = head[::-1]
    j = np.arange(n - a)

    phases = rng.permutation(l)
    v = np.empty(n)
    v[:a] = head
    for phase in phases:
        v[a:] = ((j - phase) % l < m).astype(np.float64)
        if _is_periodic(v, l):
            continue
        if not any(_blinds(v, scheme) for scheme in visible_to):
            break
    else:
        logger.warning("no tail phase keeps the stream visible and non-periodic")

    provenance = Provenance(
        kind="family",
        name="rand_periodic",
        params={
            "a": a,
            "l": l,
            "k": k,
            "m": m,
            "phase": int(phase),
            "ones_first": ones_first,
        },
    )
    return AdversarialProfile.from_array(v, provenance).model_copy(
        update={"exact": True}
    )


class RandPeriodicFamily(BaseFamily):
    """Mean-matched periodic tail after ``a``; fools only ``FixedReference(a, l)``.

    With a half-duty tail, phases l/4 and 3l/4 also blind
    ``FixedReference(a + l//2, l)``; ``keep_visible`` skips such phases.
    """

    name = "rand_periodic"

    def __init__(self, a: int = 100, l: int = 100, keep_visible: bool = True):
        self.a = a
        self.l = l
        self.keep_visible = keep_visible
        feasible_head_ones(a, l)

    def generate(self, n: int, rng: np.random.Generator) -> AdversarialProfile:
        visible_to = [FixedReference(a=self.a + self.l // 2, l=self.l)]
        if not self.keep_visible or self.l < 2:
            visible_to = []
        return gen_rand_periodic(self.a, self.l, n, rng, visible_to=visible_to)

    def target_schemes(self) -> list[WindowScheme]:
        return [FixedReference(a=self.a, l=self.l)]

    def params(self) -> dict[str, Any]:
        return {"a": self.a, "l": self.l, "keep_visible": self.keep_visible}

    @property
    def label(self) -> str:
        return f"Rand.Per. ({self.a})"
