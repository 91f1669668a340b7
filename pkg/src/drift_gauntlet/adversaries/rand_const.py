"""Random head, constant tail: mean-matched profiles for reference-window schemes."""

from typing import Any, Literal

import numpy as np

from ..core.models import (
    AdversarialProfile,
    FixedReference,
    GrowingReference,
    Provenance,
    WindowScheme,
)
from ..errors import OddHead
from .base import BaseFamily

TAIL_LEVEL = 0.5

Tail = Literal["constant", "alternating"]


def gen_rand_const(
    a: int,
    n: int,
    rng: np.random.Generator,
    blocks: int = 2,
    tail: Tail = "constant",
) -> AdversarialProfile:
    """Balanced random binary head of length ``a`` followed by a constant ½ tail.

    The head is cut into ``blocks`` equal runs, half of them ones, in random
    order. ``blocks=a`` draws every head position independently subject to
    exactly ``a/2`` ones.

    ``tail="alternating"`` replaces the constant by the binary pattern
    1, 0, 1, 0, ... so every sample has a fixed component. Windows of even
    length and growing references stepped by an even stride still see mean
    ½ exactly; odd split times do not.

    Raises:
        OddHead: If ``a`` is odd, since the tail must equal the head mean exactly.
    """
    if not 0 < a < n:
        raise ValueError(f"need 0 < a < n, got a={a}, n={n}")
    if a % 2:
        raise OddHead(f"head length {a} is odd; the matched mean 1/2 is not exact")
    if blocks < 2 or blocks % 2 or a % blocks:
        raise ValueError(f"blocks={blocks} must be an even divisor of a={a}")
    if tail not in ("constant", "alternating"):
        raise ValueError(f"unknown tail {tail!r}")

    runs = rng.permutation(np.repeat([1.0, 0.0], blocks // 2))
    v = np.full(n, TAIL_LEVEL)
    v[:a] = np.repeat(runs, a // blocks)
    if tail == "alternating":
        v[a:] = (np.arange(n - a) % 2 == 0).astype(np.float64)
    provenance = Provenance(
        kind="family",
        name="rand_const",
        params={
            "a": a,
            "blocks": blocks,
            "tail": tail,
            "runs": [int(r) for r in runs],
        },
    )
    return AdversarialProfile.from_array(v, provenance).model_copy(
        update={"exact": True}
    )


class RandConstFamily(BaseFamily):
    """Matched-mean constant after ``a``; fools reference windows anchored at 0."""

    name = "rand_const"

    def __init__(
        self, a: int = 100, l: int = 100, blocks: int = 2, tail: Tail = "constant"
    ):
        self.a = a
        self.l = l
        self.blocks = blocks
        self.tail = tail
        if tail == "alternating" and l % 2:
            raise ValueError(f"an alternating tail needs an even window, got l={l}")

    def generate(self, n: int, rng: np.random.Generator) -> AdversarialProfile:
        return gen_rand_const(self.a, n, rng, blocks=self.blocks, tail=self.tail)

    def target_schemes(self) -> list[WindowScheme]:
        return [
            GrowingReference(a=self.a, l=self.l, stride=self._growing_stride),
            FixedReference(a=self.a, l=self.l),
        ]

    @property
    def _growing_stride(self) -> int:
        # odd split times break the alternating tail's mean
        return 2 if self.tail == "alternating" else 1

    def params(self) -> dict[str, Any]:
        return {"a": self.a, "l": self.l, "blocks": self.blocks, "tail": self.tail}

    @property
    def label(self) -> str:
        return f"Rand.Const ({self.a})"
