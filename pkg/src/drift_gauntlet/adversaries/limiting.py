"""Adversarial functions in continuous time and their integral verifier.

A function ``f: T -> [0, 1]`` hides drift from a window scheme when, for
every split time ``t``, the two windows carry the same mean of ``f``::

    |W2| * integral_{W1} f  ==  |W1| * integral_{W2} f

Integrals use composite Simpson quadrature applied separately on every
smooth piece of ``f``, so piecewise constant functions integrate exactly.
"""

import logging
from itertools import pairwise
from pathlib import Path
import sys
from typing import Annotated, Any, ClassVar, Literal

if sys.version_info >= (3, 11):
    from typing import Self
else:
    from typing_extensions import Self

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, model_validator
from scipy import integrate

from ..core.models import (
    AdversarialProfile,
    Chunked,
    FixedReference,
    GrowingReference,
    Provenance,
    SlidingPair,
    UnionScheme,
    WindowScheme,
)
from ..core.windowing import load_document, parse_scheme
from ..errors import QuadratureUnstable, RangeViolation

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 50
DEFAULT_QUAD_POINTS = 512
# panels per discontinuity inside a window
MIN_PANELS_PER_BREAK = 4
RANGE_SAMPLES = 4097
RANGE_TOL = 1e-12
MEAN_TOL = 1e-12


class LimitingFunction(BaseModel):
    """Common interface of the adversarial function families."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    #: Left end of the domain; ``-inf`` for functions on the whole real line.
    domain_start: ClassVar[float] = 0.0

    @property
    def discontinuous(self) -> bool:
        """Whether the function is piecewise constant with jumps."""
        return False

    def __call__(self, t: ArrayLike) -> NDArray[np.float64]:
        raise NotImplementedError

    def breakpoints(self, lo: float, hi: float) -> NDArray[np.float64]:
        """Discontinuities in ``[lo, hi]``, sorted."""
        return np.empty(0)


def _grid_breaks(
    origin: float, step: float, offsets: NDArray[np.float64], lo: float, hi: float
) -> NDArray[np.float64]:
    """Points ``origin + k*step + offset`` inside ``[lo, hi]``."""
    k0 = int(np.floor((lo - origin) / step)) - 1
    k1 = int(np.ceil((hi - origin) / step)) + 1
    ks = np.arange(k0, k1 + 1)
    pts = (origin + ks[:, None] * step + offsets[None, :]).ravel()
    return np.unique(pts[(pts >= lo) & (pts <= hi)])


def _level_lookup(
    levels: tuple[float, ...], x: NDArray[np.float64], length: float
) -> NDArray[np.float64]:
    idx = np.clip(np.floor(x * len(levels) / length).astype(int), 0, len(levels) - 1)
    return np.asarray(levels, dtype=np.float64)[idx]


class PeriodicFunction(LimitingFunction):
    """``f(t) = f(t + l)``: a square or sine wave on the whole real line."""

    family: Literal["periodic"] = "periodic"
    l: float = Field(gt=0)
    duty: float = Field(default=0.5, gt=0, lt=1)
    shape: Literal["square", "sine"] = "square"
    phase: float = 0.0

    domain_start: ClassVar[float] = -np.inf

    @property
    def discontinuous(self) -> bool:
        return self.shape == "square"

    def __call__(self, t: ArrayLike) -> NDArray[np.float64]:
        x = np.mod(np.asarray(t, dtype=np.float64) - self.phase, self.l)
        if self.shape == "sine":
            return np.asarray(0.5 + 0.5 * np.sin(2 * np.pi * x / self.l))
        return (x < self.duty * self.l).astype(np.float64)

    def breakpoints(self, lo: float, hi: float) -> NDArray[np.float64]:
        if self.shape == "sine":
            return np.empty(0)
        offsets = np.array([0.0, self.duty * self.l])
        return _grid_breaks(self.phase, self.l, offsets, lo, hi)


class PeriodicAfterMatchedMean(LimitingFunction):
    """Arbitrary piecewise constant head on ``[0, a)``, then an l-periodic tail.

    Head and tail are given as equal-width level sequences; the head mean
    must equal the tail's mean over one period unless ``check_mean`` is
    off, which admits the detectable mismatched case.
    """

    family: Literal["periodic_after"] = "periodic_after"
    a: float = Field(gt=0)
    l: float = Field(gt=0)
    head: tuple[float, ...] = Field(min_length=1)
    tail: tuple[float, ...] = Field(min_length=1)
    check_mean: bool = True

    @property
    def discontinuous(self) -> bool:
        return True

    @model_validator(mode="after")
    def _check_matched_mean(self) -> Self:
        if not self.check_mean:
            return self
        if abs(float(np.mean(self.head)) - float(np.mean(self.tail))) > MEAN_TOL:
            raise ValueError(
                f"head mean {np.mean(self.head):.6g} differs from "
                f"tail mean {np.mean(self.tail):.6g}"
            )
        return self

    def __call__(self, t: ArrayLike) -> NDArray[np.float64]:
        t = np.asarray(t, dtype=np.float64)
        tail = _level_lookup(self.tail, np.mod(t - self.a, self.l), self.l)
        return np.where(t < self.a, _level_lookup(self.head, t, self.a), tail)

    def breakpoints(self, lo: float, hi: float) -> NDArray[np.float64]:
        head = self.a * np.arange(1, len(self.head) + 1) / len(self.head)
        head = head[(head >= lo) & (head <= hi)]
        offsets = self.l * np.arange(len(self.tail)) / len(self.tail)
        tail = _grid_breaks(self.a, self.l, offsets, max(lo, self.a), hi)
        return np.unique(np.concatenate([head, tail]))


class ConstantAfter(LimitingFunction):
    """Piecewise constant head on ``[0, a)`` followed by the constant ``c``.

    ``c`` defaults to the head mean, the only value that keeps growing and
    fixed reference windows blind.
    """

    family: Literal["constant_after"] = "constant_after"
    a: float = Field(gt=0)
    head: tuple[float, ...] = Field(min_length=1)
    c: float | None = Field(default=None, ge=0, le=1)

    @property
    def discontinuous(self) -> bool:
        return True

    @model_validator(mode="after")
    def _check_level(self) -> Self:
        if self.c is not None and abs(self.c - float(np.mean(self.head))) > MEAN_TOL:
            raise ValueError(f"tail level {self.c} differs from the head mean")
        return self

    @property
    def level(self) -> float:
        return float(np.mean(self.head)) if self.c is None else self.c

    def __call__(self, t: ArrayLike) -> NDArray[np.float64]:
        t = np.asarray(t, dtype=np.float64)
        return np.where(t < self.a, _level_lookup(self.head, t, self.a), self.level)

    def breakpoints(self, lo: float, hi: float) -> NDArray[np.float64]:
        pts = self.a * np.arange(1, len(self.head) + 1) / len(self.head)
        return pts[(pts >= lo) & (pts <= hi)]


class BoundaryEffect(LimitingFunction):
    """``f(t) = p + t * q(t)`` with ``q(t) = amplitude * sin(2 pi t / l)``.

    Satisfies every sliding-window identity of period ``l`` yet leaves
    ``[0, 1]`` once ``|t|`` grows, so it is never a valid profile on all of T.
    """

    family: Literal["boundary_effect"] = "boundary_effect"
    l: float = Field(gt=0)
    p: float = 0.5
    q_amplitude: float = 0.25

    domain_start: ClassVar[float] = -np.inf

    def __call__(self, t: ArrayLike) -> NDArray[np.float64]:
        t = np.asarray(t, dtype=np.float64)
        q = self.q_amplitude * np.sin(2 * np.pi * t / self.l)
        return np.asarray(self.p + t * q)


AdversarialFunction = Annotated[
    PeriodicFunction | PeriodicAfterMatchedMean | ConstantAfter | BoundaryEffect,
    Field(discriminator="family"),
]
FUNCTION_ADAPTER: TypeAdapter[AdversarialFunction] = TypeAdapter(AdversarialFunction)


def parse_function(spec: str | Path | dict[str, Any]) -> AdversarialFunction:
    """Build a function from a mapping, inline JSON or a JSON/YAML file."""
    f: AdversarialFunction = FUNCTION_ADAPTER.validate_python(
        load_document(spec, "Function")
    )
    return f


class LimitingVerification(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_violation: float
    worst_t: float | None
    range_ok: bool
    n_points: int


def integrate_piecewise(
    f: LimitingFunction, lo: float, hi: float, quad_points: int = DEFAULT_QUAD_POINTS
) -> float:
    """Composite Simpson integral of ``f`` over ``[lo, hi]``, split at breakpoints.

    Raises:
        QuadratureUnstable: If ``quad_points`` is below four panels per
            discontinuity inside the interval.
    """
    if hi <= lo:
        return 0.0
    inner = [b for b in f.breakpoints(lo, hi) if lo < b < hi]
    if f.discontinuous and quad_points < MIN_PANELS_PER_BREAK * len(inner):
        raise QuadratureUnstable(
            f"{quad_points} panels cannot resolve {len(inner)} "
            f"discontinuities on [{lo:g}, {hi:g}]"
        )
    total = 0.0
    for x0, x1 in pairwise([lo, *inner, hi]):
        panels = 2 * max(1, int(np.ceil(quad_points * (x1 - x0) / (hi - lo) / 2)))
        x = np.linspace(x0, x1, panels + 1)
        xe = x.copy()
        if f.discontinuous:
            # evaluate inside the piece, never on a jump
            nudge = 1e-9 * (x1 - x0)
            xe[0] += nudge
            xe[-1] -= nudge
        total += float(integrate.simpson(f(xe), x=x))
    return total


class LimitingWindows(BaseModel):
    """Sliding, fixed or growing windows whose lengths are positive reals.

    Finite scheme documents load unchanged; ``stride`` is accepted and
    ignored since every split time on the grid is checked.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    type: Literal["sliding", "fixed", "growing"]
    l: float = Field(..., gt=0, description="Test window length")
    a: float | None = Field(None, gt=0, description="Reference length or start")
    stride: int = Field(1, ge=1)

    @model_validator(mode="after")
    def _check_reference(self) -> Self:
        if self.type == "sliding" and self.a is not None:
            raise ValueError("sliding windows take no reference length a")
        if self.type != "sliding" and self.a is None:
            raise ValueError(f"{self.type} windows need a reference length a")
        return self

    @classmethod
    def from_scheme(
        cls, scheme: "SlidingPair | FixedReference | GrowingReference | Self"
    ) -> Self:
        if isinstance(scheme, cls):
            return scheme
        if isinstance(scheme, SlidingPair):
            return cls(type="sliding", l=scheme.l)
        return cls(type=scheme.type, a=scheme.a, l=scheme.l)

    @property
    def start(self) -> float:
        return self.l if self.a is None else self.a

    def windows(self, t: float) -> tuple[tuple[float, float], tuple[float, float]]:
        if self.type == "sliding":
            return (t - self.l, t), (t, t + self.l)
        if self.type == "fixed":
            return (0.0, self.start), (t, t + self.l)
        return (0.0, t), (t, t + self.l)


LimitingScheme = WindowScheme | LimitingWindows


def parse_limiting_scheme(spec: str | Path | dict[str, Any]) -> LimitingScheme:
    """Like ``parse_scheme``, but sliding, fixed and growing keep real lengths."""
    data = load_document(spec, "Scheme")
    if isinstance(data, dict) and data.get("type") in ("sliding", "fixed", "growing"):
        return LimitingWindows.model_validate(data)
    return parse_scheme(data)


def default_t_grid(
    scheme: LimitingScheme, f: LimitingFunction, points: int = DEFAULT_GRID_POINTS
) -> NDArray[np.float64]:
    """Admissible split times spanning ten test-window lengths."""
    if isinstance(scheme, UnionScheme):
        raise ValueError("union schemes use one grid per member")
    if isinstance(scheme, Chunked):
        inner = default_t_grid(scheme.inner, f, points)
        c = scheme.c
        grid = c * np.unique(np.ceil(inner / c))
        return np.asarray(grid[grid <= inner.max() + c])
    windows = LimitingWindows.from_scheme(scheme)
    if windows.type == "sliding" and not np.isfinite(f.domain_start):
        lo = -5.0 * windows.l
    else:
        lo = windows.start
    return np.linspace(lo, lo + 10.0 * windows.l, points)


def _base_violations(
    f: LimitingFunction,
    windows: LimitingWindows,
    t_grid: NDArray[np.float64],
    quad_points: int,
) -> tuple[NDArray[np.float64], float, float]:
    violations = np.empty(len(t_grid))
    lo_all, hi_all = np.inf, -np.inf
    for i, t in enumerate(t_grid):
        (a1, b1), (a2, b2) = windows.windows(float(t))
        if a1 < f.domain_start or b1 <= a1:
            raise ValueError(f"split time {t:g} is not admissible for {windows!r}")
        i1 = integrate_piecewise(f, a1, b1, quad_points)
        i2 = integrate_piecewise(f, a2, b2, quad_points)
        violations[i] = abs((b2 - a2) * i1 - (b1 - a1) * i2)
        lo_all, hi_all = min(lo_all, a1), max(hi_all, b2)
    return violations, lo_all, hi_all


def verify_function_limiting(
    f: LimitingFunction,
    scheme: LimitingScheme,
    t_grid: ArrayLike | None = None,
    quad_points: int = DEFAULT_QUAD_POINTS,
) -> LimitingVerification:
    """Check the window-integral identities of ``scheme`` on a grid of split times.

    The violation at ``t`` is ``| |W2| * int_W1 f - |W1| * int_W2 f |``.
    ``range_ok`` reports whether ``f`` stays in ``[0, 1]`` over every window
    touched by the grid. Union schemes report the worst member; chunked
    schemes check split times on multiples of ``c`` only.
    """
    members = scheme.members if isinstance(scheme, UnionScheme) else (scheme,)
    worst, worst_t = 0.0, None
    lo_all, hi_all = np.inf, -np.inf
    n_points = 0
    for member in members:
        base = member.inner if isinstance(member, Chunked) else member
        if t_grid is None:
            grid = default_t_grid(member, f)
        else:
            grid = np.asarray(t_grid, dtype=np.float64)
            if isinstance(member, Chunked):
                grid = grid[np.isclose(np.mod(grid, member.c), 0.0)]
        windows = LimitingWindows.from_scheme(base)
        violations, lo, hi = _base_violations(f, windows, grid, quad_points)
        n_points += len(grid)
        lo_all, hi_all = min(lo_all, lo), max(hi_all, hi)
        if violations.size and violations.max() > worst:
            worst = float(violations.max())
            worst_t = float(grid[int(np.argmax(violations))])

    range_ok = True
    if n_points:
        x = np.linspace(lo_all, hi_all, RANGE_SAMPLES)
        values = f(x)
        range_ok = bool(values.min() >= -RANGE_TOL and values.max() <= 1 + RANGE_TOL)
    logger.info(
        "limiting check: max violation %.3g over %d split times, range_ok=%s",
        worst,
        n_points,
        range_ok,
    )
    return LimitingVerification(
        max_violation=worst, worst_t=worst_t, range_ok=range_ok, n_points=n_points
    )


def sample_function_to_profile(
    f: AdversarialFunction, n: int, t_span: tuple[float, float]
) -> AdversarialProfile:
    """Sample ``f`` at ``n`` equidistant times covering ``t_span`` inclusively.

    Raises:
        RangeViolation: If a sample leaves ``[0, 1]``.
    """
    if n < 2:
        raise ValueError("need at least two samples")
    t0, t1 = t_span
    v = f(t0 + np.arange(n) * (t1 - t0) / (n - 1))
    bad = np.flatnonzero((v < -RANGE_TOL) | (v > 1 + RANGE_TOL))
    if bad.size:
        i = int(bad[0])
        raise RangeViolation(
            f"{f.family} leaves [0, 1] at sample {i}: f = {v[i]:.6g} "
            f"({bad.size} samples out of range)"
        )
    provenance = Provenance(
        kind="family",
        name=f"{f.family}_sampled",
        params={**f.model_dump(), "t_span": [t0, t1]},
    )
    return AdversarialProfile.from_array(np.clip(v, 0.0, 1.0), provenance)
