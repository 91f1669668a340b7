"""Base class and discovery for adversarial profile families."""

import importlib.metadata
import logging
from abc import ABC, abstractmethod
from typing import Any, ClassVar

import numpy as np

from ..core.models import AdversarialProfile, WindowScheme

logger = logging.getLogger(__name__)

ENTRY_POINT_GROUP = "drift_gauntlet.families"


class BaseFamily(ABC):
    """Abstract base class for adversarial profile families.

    A family produces profiles of any stream length and names the window
    schemes its members are built to fool.
    """

    name: ClassVar[str]

    @abstractmethod
    def generate(self, n: int, rng: np.random.Generator) -> AdversarialProfile:
        """Draw one member of the family for a stream of ``n`` samples."""

    @abstractmethod
    def target_schemes(self) -> list[WindowScheme]:
        """Schemes for which every member has an exact zero residual."""

    @abstractmethod
    def params(self) -> dict[str, Any]:
        """Constructor parameters, as echoed in provenance and configs."""

    @property
    def label(self) -> str:
        """Row label used in result tables."""
        return str(self)

    def __str__(self) -> str:
        return self.__class__.__name__

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.params().items())
        return f"{self.__class__.__name__}({args})"


def get_available_families() -> dict[str, type[BaseFamily]]:
    """Discover profile families from entry points.

    Falls back to the built-in families when the package metadata is not
    installed.
    """
    families: dict[str, type[BaseFamily]] = {}
    try:
        for ep in importlib.metadata.entry_points(group=ENTRY_POINT_GROUP):
            try:
                families[ep.name] = ep.load()
            except Exception as e:
                logger.warning("could not load family %r: %s", ep.name, e)
    except Exception as e:
        logger.warning("entry-point discovery failed: %s", e)

    if not families:
        from .periodic import PeriodicFamily
        from .rand_const import RandConstFamily
        from .rand_periodic import RandPeriodicFamily

        families = {
            PeriodicFamily.name: PeriodicFamily,
            RandConstFamily.name: RandConstFamily,
            RandPeriodicFamily.name: RandPeriodicFamily,
        }
    return families


def parse_family(spec: str) -> BaseFamily:
    """Build a family from ``name:key=value,...``.

    Example: ``periodic:l=100,duty=50``.
    """
    name, _, arg_text = spec.partition(":")
    families = get_available_families()
    if name not in families:
        raise ValueError(
            f"unknown family {name!r}; available: {', '.join(sorted(families))}"
        )
    kwargs: dict[str, int] = {}
    for item in filter(None, (part.strip() for part in arg_text.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"family argument {item!r} is not key=value")
        kwargs[key.strip()] = int(value)
    return families[name](**kwargs)
