"""Periodic square-wave profiles."""

from typing import Any

import numpy as np

from ..core.models import (
    AdversarialProfile,
    FixedReference,
    Provenance,
    SlidingPair,
    WindowScheme,
)
from .base import BaseFamily


def gen_periodic(l: int, duty: int, n: int) -> AdversarialProfile:
    """Binary square wave: ``duty`` ones then ``l - duty`` zeros, repeated.

    Every length-``l`` window holds exactly one period, so the profile fools
    ``SlidingPair(l)`` and ``FixedReference(l, l)``.
    """
    if not 1 <= duty < l <= n:
        raise ValueError(f"need 1 <= duty < l <= n, got duty={duty}, l={l}, n={n}")
    v = (np.arange(n) % l < duty).astype(np.float64)
    provenance = Provenance(
        kind="family", name="periodic", params={"l": l, "duty": duty}
    )
    return AdversarialProfile.from_array(v, provenance).model_copy(
        update={"exact": True}
    )


class PeriodicFamily(BaseFamily):
    """l-periodic square waves, invisible to sliding windows of length l."""

    name = "periodic"

    def __init__(self, l: int = 100, duty: int | None = None):
        self.l = l
        self.duty = l // 2 if duty is None else duty
        if not 1 <= self.duty < self.l:
            raise ValueError("duty must lie in [1, l)")

    def generate(self, n: int, rng: np.random.Generator) -> AdversarialProfile:
        return gen_periodic(self.l, self.duty, n)

    def target_schemes(self) -> list[WindowScheme]:
        return [SlidingPair(l=self.l), FixedReference(a=self.l, l=self.l)]

    def params(self) -> dict[str, Any]:
        return {"l": self.l, "duty": self.duty}

    @property
    def label(self) -> str:
        return "Periodic"
