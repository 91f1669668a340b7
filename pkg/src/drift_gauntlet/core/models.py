"""Core domain models for drift detection and adversarial construction.

All pydantic models are frozen. Stream positions are integer indices with
unit spacing, so index ``i`` doubles as the abstract time ``t = i``.
"""

from dataclasses import dataclass
from pathlib import Path
import sys
from typing import Annotated, Any, Literal

if sys.version_info >= (3, 11):
    from typing import Self
else:
    from typing_extensions import Self

import numpy as np
from numpy.typing import NDArray
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    TypeAdapter,
    computed_field,
    field_validator,
    model_validator,
)


class SlidingPair(BaseModel):
    """Two adjacent sliding windows ``([t-l, t), [t, t+l))``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    type: Literal["sliding"] = "sliding"
    l: int = Field(..., ge=1, description="Window length in samples")
    stride: int = Field(1, ge=1, description="Step between evaluated split points")


class FixedReference(BaseModel):
    """Fixed reference ``[0, a)`` against a test window ``[t, t+l)``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    type: Literal["fixed"] = "fixed"
    a: int = Field(..., ge=1, description="Reference window length")
    l: int = Field(..., ge=1, description="Test window length")
    stride: int = Field(1, ge=1, description="Step between evaluated split points")


class GrowingReference(BaseModel):
    """Growing reference ``[0, t)`` against a test window ``[t, t+l)``, ``t >= a``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    type: Literal["growing"] = "growing"
    a: int = Field(..., ge=1, description="Minimum reference length")
    l: int = Field(..., ge=1, description="Test window length")
    stride: int = Field(1, ge=1, description="Step between evaluated split points")


BaseScheme = Annotated[
    SlidingPair | FixedReference | GrowingReference, Field(discriminator="type")
]


class Chunked(BaseModel):
    """Chunk-wise updates: the inner scheme evaluated only at ``t % c == 0``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    type: Literal["chunked"] = "chunked"
    inner: BaseScheme
    c: int = Field(..., ge=1, description="Chunk size")


MemberScheme = Annotated[
    SlidingPair | FixedReference | GrowingReference | Chunked,
    Field(discriminator="type"),
]


class UnionScheme(BaseModel):
    """Several detectors run side by side; an alarm of any member counts."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    type: Literal["union"] = "union"
    members: tuple[MemberScheme, ...] = Field(..., min_length=1)


WindowScheme = Annotated[
    SlidingPair | FixedReference | GrowingReference | Chunked | UnionScheme,
    Field(discriminator="type"),
]

SCHEME_ADAPTER: TypeAdapter[Any] = TypeAdapter(WindowScheme)


@dataclass(frozen=True, slots=True, order=True)
class WindowPair:
    """Reference window ``[s1, e1)`` and test window ``[s2, e2)``."""

    s1: int
    e1: int
    s2: int
    e2: int

    def __post_init__(self) -> None:
        if self.s1 < 0 or self.s2 < 0:
            raise ValueError("window bounds must be non-negative")
        if self.e1 <= self.s1 or self.e2 <= self.s2:
            raise ValueError("windows must be non-empty")
        if self.s1 < self.e2 and self.s2 < self.e1:
            raise ValueError("windows must be disjoint")

    @property
    def w1(self) -> tuple[int, int]:
        return (self.s1, self.e1)

    @property
    def w2(self) -> tuple[int, int]:
        return (self.s2, self.e2)

    @property
    def m1(self) -> int:
        return self.e1 - self.s1

    @property
    def m2(self) -> int:
        return self.e2 - self.s2

    @property
    def t(self) -> int:
        """Split point, i.e. the start of the test window."""
        return self.s2

    def indices(self) -> NDArray[np.intp]:
        """Stream indices of both windows, reference first."""
        return np.concatenate(
            [np.arange(self.s1, self.e1), np.arange(self.s2, self.e2)]
        )

    def __str__(self) -> str:
        return f"([{self.s1},{self.e1}),[{self.s2},{self.e2}))"


class KernelSpec(BaseModel):
    """Kernel used by the MMD test.

    ``bandwidth=None`` selects the median heuristic over the tested pair.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["rbf", "linear"] = Field("rbf", description="Kernel family")
    bandwidth: float | None = Field(
        None, gt=0, description="RBF bandwidth; None for the median heuristic"
    )


class TestResult(BaseModel):
    """Outcome of one permutation MMD test."""

    __test__ = False  # not a pytest class

    model_config = ConfigDict(frozen=True)

    pair: WindowPair
    mmd2: float = Field(..., ge=0, description="Biased MMD² of the canonical split")
    p_value: float = Field(..., gt=0, le=1, description="Add-one permutation p-value")
    bandwidth: float | None = Field(None, description="RBF bandwidth actually used")


class DetectionReport(BaseModel):
    """All tests of one detector pass over a stream."""

    model_config = ConfigDict(frozen=True)

    results: tuple[TestResult, ...]
    theta: float = Field(..., ge=0, le=1)
    scheme: WindowScheme
    kernel: KernelSpec
    permutations: int = Field(..., ge=1)
    seed: int

    @computed_field  # type: ignore[prop-decorator]
    @property
    def min_p(self) -> float:
        return min((r.p_value for r in self.results), default=1.0)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def alarms(self) -> tuple[WindowPair, ...]:
        return tuple(r.pair for r in self.results if r.p_value < self.theta)

    @property
    def drift_detected(self) -> bool:
        return bool(self.alarms)

    def to_json(self, path: Path | str) -> None:
        Path(path).write_text(self.model_dump_json(indent=2) + "\n", encoding="utf-8")


class Provenance(BaseModel):
    """Where an adversarial profile came from."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["nullspace_solve", "family", "user_supplied"]
    name: str | None = Field(None, description="Family name for kind='family'")
    params: dict[str, Any] = Field(default_factory=dict)
    binarized: bool = False
    fractional_indices: tuple[int, ...] = ()


class AdversarialProfile(BaseModel):
    """Mixture weight of P at every stream position."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    v: tuple[float, ...] = Field(..., min_length=1)
    provenance: Provenance = Field(
        default_factory=lambda: Provenance(kind="user_supplied")
    )
    exact: bool | None = Field(
        None, description="True when the residual was certified in rationals"
    )

    @model_validator(mode="before")
    @classmethod
    def _check_declared_length(cls, data: Any) -> Any:
        if isinstance(data, dict) and "n" in data:
            data = dict(data)
            n = data.pop("n")
            if n != len(data.get("v", ())):
                raise ValueError(f"declared n={n} does not match len(v)")
        return data

    @field_validator("v")
    @classmethod
    def _check_unit_interval(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        arr = np.asarray(v, dtype=float)
        if not np.all(np.isfinite(arr)):
            raise ValueError("profile entries must be finite")
        if arr.min() < 0.0 or arr.max() > 1.0:
            raise ValueError("profile entries must lie in [0, 1]")
        return v

    @model_validator(mode="after")
    def _check_normalized(self) -> Self:
        if self.provenance.kind == "nullspace_solve":
            arr = self.array
            if abs(arr.min()) > 1e-12 or abs(arr.max() - 1.0) > 1e-12:
                raise ValueError("null-space profiles must be min-max normalized")
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def n(self) -> int:
        return len(self.v)

    @property
    def array(self) -> NDArray[np.float64]:
        return np.asarray(self.v, dtype=np.float64)

    @property
    def is_constant(self) -> bool:
        return len(set(self.v)) == 1

    @classmethod
    def from_array(
        cls, v: NDArray[np.float64] | list[float], provenance: Provenance
    ) -> Self:
        return cls(v=tuple(float(x) for x in v), provenance=provenance)

    @classmethod
    def from_json(cls, path: Path | str) -> Self:
        return cls.model_validate_json(Path(path).read_text(encoding="utf-8"))

    def to_json(self, path: Path | str) -> None:
        Path(path).write_text(self.model_dump_json(indent=2) + "\n", encoding="utf-8")
