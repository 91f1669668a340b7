"""Configuration models for drift_gauntlet experiments.

This module provides Pydantic models for loading and validating
experiment grids from YAML or JSON files.
"""

from pathlib import Path
import sys
from typing import Any, Literal

if sys.version_info >= (3, 11):
    from typing import Self
else:
    from typing_extensions import Self

import yaml
from pydantic import BaseModel, ConfigDict, Field

from .adversaries.base import BaseFamily, get_available_families
from .core.models import (
    Chunked,
    FixedReference,
    GrowingReference,
    KernelSpec,
    SlidingPair,
    UnionScheme,
    WindowScheme,
)
from .core.windowing import minimum_length, scheme_label

DEFAULT_SEED = 42
SEED_ENVVAR = "DRIFT_GAUNTLET_SEED"


class DatasetSpec(BaseModel):
    """One row of the experiment grid: a profile family and its parameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    family: Literal["periodic", "rand_const", "rand_periodic"]
    params: dict[str, int | str] = Field(default_factory=dict)

    def build(self) -> BaseFamily:
        return get_available_families()[self.family](**self.params)

    @property
    def label(self) -> str:
        return self.build().label


def _default_datasets() -> list[DatasetSpec]:
    return [
        DatasetSpec(family="periodic", params={"l": 100, "duty": 50}),
        DatasetSpec(family="rand_const", params={"a": 100}),
        DatasetSpec(family="rand_const", params={"a": 150}),
        DatasetSpec(family="rand_periodic", params={"a": 100, "l": 100}),
        DatasetSpec(family="rand_periodic", params={"a": 150, "l": 100}),
    ]


def _default_schemes() -> list[WindowScheme]:
    return [
        FixedReference(a=100, l=100),
        FixedReference(a=150, l=100),
        GrowingReference(a=100, l=100),
        GrowingReference(a=150, l=100),
        SlidingPair(l=100),
    ]


def with_stride(scheme: WindowScheme, stride: int) -> WindowScheme:
    """Copy of ``scheme`` whose base schemes step split times by ``stride``."""
    if isinstance(scheme, Chunked):
        return scheme.model_copy(update={"inner": with_stride(scheme.inner, stride)})
    if isinstance(scheme, UnionScheme):
        members = tuple(with_stride(m, stride) for m in scheme.members)
        return scheme.model_copy(update={"members": members})
    return scheme.model_copy(update={"stride": stride})


class ExperimentConfig(BaseModel):
    """Configuration of a dataset x scheme detection experiment.

    CLI arguments take precedence over config file values.
    """

    model_config = ConfigDict(validate_assignment=True, extra="forbid")

    # Stream and detector
    n: int = Field(1000, ge=2, description="Stream length")
    runs: int = Field(50, ge=1, description="Independent runs per cell")
    permutations: int = Field(500, ge=1, description="Permutations per test")
    stride: int = Field(10, ge=1, description="Split-time step of every scheme")
    theta: float = Field(0.05, gt=0, le=1, description="Alarm threshold on p")
    intensity: float = Field(5.0, ge=0, description="Two-squares drift intensity")
    kernel: KernelSpec = Field(default_factory=KernelSpec)
    seed: int = Field(DEFAULT_SEED, description="Random seed for reproducibility")

    # Grid
    datasets: list[DatasetSpec] = Field(default_factory=_default_datasets)
    schemes: list[WindowScheme] = Field(default_factory=_default_schemes)

    # Pattern scoring
    mask_members: int = Field(
        8, ge=1, description="Family members that must all certify a cell"
    )
    min_matches: int = Field(13, ge=0, description="Cells that must match theory")
    undetected_floor: float = Field(
        0.05, gt=0, le=1, description="q10 at or above this counts as undetected"
    )
    detected_ceiling: float = Field(
        0.01, gt=0, le=1, description="q90 at or below this counts as detected"
    )

    def model_post_init(self, __context: Any) -> None:
        """Validate interdependent fields after model initialization."""
        if self.detected_ceiling >= self.undetected_floor:
            raise ValueError("detected_ceiling must be below undetected_floor")

        for scheme in self.schemes:
            need = minimum_length(scheme)
            if need > self.n:
                raise ValueError(
                    f"scheme {scheme_label(scheme)} needs n >= {need}, got n={self.n}"
                )

        for dataset in self.datasets:
            family = dataset.build()
            # head plus one test window must fit
            span = getattr(family, "a", 0) + getattr(family, "l", 0)
            if span > self.n:
                raise ValueError(
                    f"dataset {dataset.family} {dataset.params} does not fit n={self.n}"
                )

    @classmethod
    def full_scale(cls, **overrides: Any) -> Self:
        """Full-scale preset: 500 runs, 2500 permutations, every split time."""
        return cls(**{"runs": 500, "permutations": 2500, "stride": 1, **overrides})

    def strided_schemes(self) -> list[WindowScheme]:
        return [with_stride(s, self.stride) for s in self.schemes]

    @classmethod
    def from_yaml(cls, path: Path | str) -> Self:
        """Load an ExperimentConfig from a YAML or JSON file.

        Raises:
            FileNotFoundError: If the config file doesn't exist
            yaml.YAMLError: If the file is not valid YAML/JSON
            ValidationError: If the config values are invalid
        """
        path = Path(path) if isinstance(path, str) else path

        if not path.exists():
            raise FileNotFoundError(f"Configuration file not found: {path}")

        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)

        if data is None:
            data = {}

        return cls(**data)

    def to_yaml(self, path: Path | str) -> None:
        path = Path(path) if isinstance(path, str) else path

        data = self.model_dump(mode="json", exclude_none=True)

        with open(path, "w", encoding="utf-8") as f:
            yaml.dump(data, f, default_flow_style=False, sort_keys=True)

    def merge_cli_args(self, **cli_args: Any) -> Self:
        """Create a new ExperimentConfig with non-None CLI arguments applied."""
        config_data = self.model_dump()

        for key, value in cli_args.items():
            if value is not None and key in type(self).model_fields:
                config_data[key] = value

        return self.__class__(**config_data)
