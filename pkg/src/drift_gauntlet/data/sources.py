"""Distribution pairs the synthetic streams are drawn from."""

import sys
from typing import Annotated, Any, Literal

if sys.version_info >= (3, 11):
    from typing import Self
else:
    from typing_extensions import Self

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, model_validator


class UniformBox(BaseModel):
    """Uniform distribution on an axis-aligned box ``[low, high)``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["uniform_box"] = "uniform_box"
    low: tuple[float, ...] = Field(min_length=1)
    high: tuple[float, ...] = Field(min_length=1)

    @model_validator(mode="after")
    def _check_box(self) -> Self:
        if len(self.low) != len(self.high):
            raise ValueError("low and high must have the same dimension")
        if any(h <= lo for lo, h in zip(self.low, self.high, strict=True)):
            raise ValueError("every side of the box must have positive length")
        return self

    @property
    def dim(self) -> int:
        return len(self.low)

    def sample(self, rng: np.random.Generator, size: int) -> NDArray[np.float64]:
        return rng.uniform(self.low, self.high, size=(size, self.dim))


class Gaussian(BaseModel):
    """Isotropic normal distribution."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["gaussian"] = "gaussian"
    mean: tuple[float, ...] = Field(min_length=1)
    scale: float = Field(default=1.0, gt=0)

    @property
    def dim(self) -> int:
        return len(self.mean)

    def sample(self, rng: np.random.Generator, size: int) -> NDArray[np.float64]:
        return rng.normal(self.mean, self.scale, size=(size, self.dim))


Distribution = Annotated[UniformBox | Gaussian, Field(discriminator="kind")]


class SampleSource(BaseModel):
    """Named pair of distributions: ``P`` (profile weight 1) and ``Q`` (weight 0)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    P: Distribution
    Q: Distribution
    params: dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_dimensions(self) -> Self:
        if self.P.dim != self.Q.dim:
            raise ValueError(f"P has dimension {self.P.dim}, Q has {self.Q.dim}")
        return self

    @property
    def dim(self) -> int:
        return self.P.dim

    @property
    def is_null(self) -> bool:
        """True when P and Q coincide, so no profile can carry drift."""
        return self.P == self.Q

    def swapped(self) -> "SampleSource":
        return self.model_copy(update={"P": self.Q, "Q": self.P})


def two_squares(intensity: float = 5.0) -> SampleSource:
    """Unit square against a copy shifted by ``intensity / 10`` along the first axis.

    Intensity 5 shifts by 0.5, so the squares overlap on half their area.
    Intensity 0 gives the null source ``P == Q``.
    """
    if intensity < 0:
        raise ValueError(f"intensity must be non-negative, got {intensity}")
    delta = intensity / 10.0
    return SampleSource(
        name="two_squares",
        P=UniformBox(low=(0.0, 0.0), high=(1.0, 1.0)),
        Q=UniformBox(low=(delta, 0.0), high=(1.0 + delta, 1.0)),
        params={"intensity": intensity, "delta": delta},
    )


def gaussian_shift(
    offset: tuple[float, ...] | list[float] = (1.0, 0.0), scale: float = 1.0
) -> SampleSource:
    """Standard normal ``P`` against ``Q`` with its mean moved by ``offset``."""
    offset = tuple(float(o) for o in offset)
    return SampleSource(
        name="gaussian_shift",
        P=Gaussian(mean=(0.0,) * len(offset), scale=scale),
        Q=Gaussian(mean=offset, scale=scale),
        params={"offset": list(offset), "scale": scale},
    )


def custom_boxes(p: UniformBox, q: UniformBox) -> SampleSource:
    return SampleSource(name="custom_boxes", P=p, Q=q)


def make_source(name: str, intensity: float = 5.0) -> SampleSource:
    """Source by CLI name; ``intensity`` sets the shift for both built-ins."""
    if name == "two_squares":
        return two_squares(intensity)
    if name == "gaussian_shift":
        return gaussian_shift((intensity / 10.0, 0.0))
    raise ValueError(f"unknown source {name!r}; use two_squares or gaussian_shift")
