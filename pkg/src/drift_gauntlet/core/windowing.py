"""Windowing schemes, the window pairs they induce, and their weight matrices."""

import json
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np
import yaml
from numpy.typing import NDArray

from ..errors import EmptyScheme
from .models import (
    SCHEME_ADAPTER,
    Chunked,
    FixedReference,
    GrowingReference,
    SlidingPair,
    UnionScheme,
    WindowPair,
    WindowScheme,
)

logger = logging.getLogger(__name__)


def _split_points(first: int, last: int, stride: int) -> range:
    return range(first, last + 1, stride)


def _pairs(scheme: WindowScheme, n: int) -> list[WindowPair]:
    if isinstance(scheme, SlidingPair):
        l = scheme.l
        return [
            WindowPair(t - l, t, t, t + l)
            for t in _split_points(l, n - l, scheme.stride)
        ]
    if isinstance(scheme, FixedReference):
        return [
            WindowPair(0, scheme.a, t, t + scheme.l)
            for t in _split_points(scheme.a, n - scheme.l, scheme.stride)
        ]
    if isinstance(scheme, GrowingReference):
        return [
            WindowPair(0, t, t, t + scheme.l)
            for t in _split_points(scheme.a, n - scheme.l, scheme.stride)
        ]
    if isinstance(scheme, Chunked):
        return [p for p in _pairs(scheme.inner, n) if p.t % scheme.c == 0]
    if isinstance(scheme, UnionScheme):
        seen: set[WindowPair] = set()
        merged: list[WindowPair] = []
        for member in scheme.members:
            for pair in _pairs(member, n):
                if pair not in seen:
                    seen.add(pair)
                    merged.append(pair)
        return merged
    raise TypeError(f"unknown window scheme: {scheme!r}")


def enumerate_pairs(scheme: WindowScheme, n: int) -> list[WindowPair]:
    """List every window pair ``scheme`` compares on a stream of length ``n``.

    Base schemes yield their pairs in increasing split point ``t``; unions
    concatenate their members and drop repeated pairs.

    Raises:
        EmptyScheme: If no pair fits into ``n`` samples.
    """
    pairs = _pairs(scheme, n)
    if not pairs:
        raise EmptyScheme(
            f"{scheme_label(scheme)} admits no window pair on a stream of length {n}"
        )
    return pairs


def union_scheme(schemes: Sequence[WindowScheme]) -> UnionScheme:
    """Combine detectors into one flat union scheme."""
    if not schemes:
        raise ValueError("union_scheme needs at least one scheme")
    members: list[Any] = []
    for scheme in schemes:
        if isinstance(scheme, UnionScheme):
            members.extend(scheme.members)
        else:
            members.append(scheme)
    return UnionScheme(members=tuple(members))


def minimum_length(scheme: WindowScheme) -> int:
    """Shortest stream on which ``scheme`` compares at least one pair."""
    if isinstance(scheme, SlidingPair):
        return 2 * scheme.l
    if isinstance(scheme, FixedReference | GrowingReference):
        return scheme.a + scheme.l
    if isinstance(scheme, Chunked):
        inner = scheme.inner
        first = inner.l if isinstance(inner, SlidingPair) else inner.a
        # t mod c cycles within c steps along the inner grid
        for k in range(scheme.c):
            t = first + k * inner.stride
            if t % scheme.c == 0:
                return t + inner.l
        raise EmptyScheme(f"{scheme_label(scheme)} never reaches a chunk boundary")
    if isinstance(scheme, UnionScheme):
        return min(minimum_length(m) for m in scheme.members)
    raise TypeError(f"unknown window scheme: {scheme!r}")


def scheme_label(scheme: WindowScheme) -> str:
    """Short column label, e.g. ``fixed(100)``, ``grow(150)``, ``sliding``."""
    if isinstance(scheme, SlidingPair):
        return "sliding"
    if isinstance(scheme, FixedReference):
        return f"fixed({scheme.a})"
    if isinstance(scheme, GrowingReference):
        return f"grow({scheme.a})"
    if isinstance(scheme, Chunked):
        return f"chunked({scheme_label(scheme.inner)},{scheme.c})"
    if isinstance(scheme, UnionScheme):
        return "+".join(scheme_label(m) for m in scheme.members)
    raise TypeError(f"unknown window scheme: {scheme!r}")


def parse_scheme(spec: str | Path | dict[str, Any] | WindowScheme) -> WindowScheme:
    """Build a scheme from a JSON object, inline JSON text or a JSON/YAML file.

    Field names: ``type`` (sliding|fixed|growing|chunked|union), ``l``,
    ``a``, ``c``, ``stride``, ``inner`` (chunked) and ``members`` (union).
    """
    if isinstance(
        spec, SlidingPair | FixedReference | GrowingReference | Chunked | UnionScheme
    ):
        return spec
    data = load_document(spec, "Scheme")
    scheme: WindowScheme = SCHEME_ADAPTER.validate_python(data)
    return scheme


def load_document(spec: str | Path | dict[str, Any], what: str = "Document") -> Any:
    """Return ``spec`` itself, inline JSON text parsed, or a JSON/YAML file loaded."""
    if isinstance(spec, Path) or (
        isinstance(spec, str) and not spec.lstrip().startswith("{")
    ):
        path = Path(spec)
        if not path.exists():
            raise FileNotFoundError(f"{what} file not found: {path}")
        with open(path, encoding="utf-8") as f:
            return yaml.safe_load(f)
    if isinstance(spec, str):
        return json.loads(spec)
    return spec


@dataclass(frozen=True)
class WeightMatrix:
    """Row 0 is all ones; row ``r >= 1`` is the difference vector of ``pairs[r-1]``.

    Entries are exact rationals; dense float copies are produced on demand.
    """

    n: int
    pairs: tuple[WindowPair, ...]
    _dense_cache: dict[bool, NDArray[np.float64]] = field(
        default_factory=dict, repr=False, compare=False
    )

    @property
    def n_rows(self) -> int:
        return len(self.pairs) + 1

    @property
    def pair_index(self) -> dict[int, WindowPair]:
        return {r + 1: pair for r, pair in enumerate(self.pairs)}

    def row_entries(self, r: int) -> dict[int, Fraction]:
        """Sparse row ``r`` as ``{column: value}``."""
        if r == 0:
            return {i: Fraction(1) for i in range(self.n)}
        pair = self.pairs[r - 1]
        entries = {i: Fraction(1, pair.m1) for i in range(pair.s1, pair.e1)}
        entries.update({i: Fraction(-1, pair.m2) for i in range(pair.s2, pair.e2)})
        return entries

    @property
    def rows(self) -> list[dict[int, Fraction]]:
        return [self.row_entries(r) for r in range(self.n_rows)]

    def to_fractions(self, include_ones: bool = True) -> NDArray[np.object_]:
        """Dense object array of ``Fraction`` entries (small ``n`` only)."""
        first = 0 if include_ones else 1
        out = np.full((self.n_rows - first, self.n), Fraction(0), dtype=object)
        for k, r in enumerate(range(first, self.n_rows)):
            for i, value in self.row_entries(r).items():
                out[k, i] = value
        return out

    def to_dense(self, include_ones: bool = True) -> NDArray[np.float64]:
        """Dense float matrix, optionally without the all-ones row."""
        if include_ones not in self._dense_cache:
            diff = np.zeros((len(self.pairs), self.n), dtype=np.float64)
            for k, pair in enumerate(self.pairs):
                diff[k, pair.s1 : pair.e1] = 1.0 / pair.m1
                diff[k, pair.s2 : pair.e2] = -1.0 / pair.m2
            if include_ones:
                diff = np.vstack([np.ones((1, self.n)), diff])
            diff.setflags(write=False)
            self._dense_cache[include_ones] = diff
        return self._dense_cache[include_ones]

    def difference_rows(self) -> NDArray[np.float64]:
        return self.to_dense(include_ones=False)

    def pair_weights(self, pair: WindowPair) -> NDArray[np.float64]:
        """Difference vector of ``pair`` restricted to its own indices."""
        return np.concatenate(
            [np.full(pair.m1, 1.0 / pair.m1), np.full(pair.m2, -1.0 / pair.m2)]
        )


def build_weight_matrix(scheme: WindowScheme, n: int) -> WeightMatrix:
    """Encode all window pairs of ``scheme`` on ``n`` samples as one matrix."""
    pairs = enumerate_pairs(scheme, n)
    logger.info(
        "weight matrix for %s: %d rows x %d", scheme_label(scheme), len(pairs) + 1, n
    )
    return WeightMatrix(n=n, pairs=tuple(pairs))

