"""Dataset x scheme detection experiments and their comparison with theory."""

import logging
import time
from collections.abc import Callable
from typing import Literal

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from ..adversaries.base import BaseFamily
from ..adversaries.verify import verify_against_matrix
from ..config import ExperimentConfig
from ..core.detector import run_detector
from ..core.models import WindowScheme
from ..core.windowing import build_weight_matrix, scheme_label
from ..data.sources import SampleSource, two_squares
from ..data.stream import sample_stream
from ..errors import ExperimentCellError

logger = logging.getLogger(__name__)

Mask = Literal["adversarial", "detected"]
Outcome = Literal["undetected", "detected", "ambiguous"]


def _member_rng(seed: int, k: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, k])))


def expected_mask(
    family: BaseFamily, scheme: WindowScheme, n: int, members: int = 8, seed: int = 0
) -> Mask:
    """Theory's verdict for a cell, from exact residuals of seeded family members.

    The cell is adversarial only when every member is non-constant and has an
    exact zero residual against ``scheme``.
    """
    W = build_weight_matrix(scheme, n)
    for k in range(members):
        profile = family.generate(n, _member_rng(seed, k))
        check = verify_against_matrix(list(profile.v), W)
        if not (check.exact_zero and check.is_nonconstant):
            return "detected"
    return "adversarial"


class CellResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    dataset: str
    scheme: str
    q90: float
    q10: float
    mask: Mask
    min_p: tuple[float, ...]


class QuantileTable(BaseModel):
    """90%/10% quantiles of the per-run minimum p-value for every cell."""

    model_config = ConfigDict(frozen=True)

    datasets: tuple[str, ...]
    schemes: tuple[str, ...]
    cells: tuple[CellResult, ...]
    undetected_floor: float = 0.05
    detected_ceiling: float = 0.01
    wall_seconds: float = Field(0.0, ge=0, description="Elapsed time of the run")

    def cell(self, dataset: str, scheme: str) -> CellResult:
        for c in self.cells:
            if c.dataset == dataset and c.scheme == scheme:
                return c
        raise KeyError(f"no cell ({dataset}, {scheme})")

    def outcome(self, cell: CellResult) -> Outcome:
        if cell.q10 >= self.undetected_floor:
            return "undetected"
        if cell.q90 <= self.detected_ceiling:
            return "detected"
        return "ambiguous"

    def matches(self, cell: CellResult) -> bool:
        expected = "undetected" if cell.mask == "adversarial" else "detected"
        return self.outcome(cell) == expected

    @property
    def n_matches(self) -> int:
        return sum(self.matches(c) for c in self.cells)

    def mismatches(self) -> list[CellResult]:
        return [c for c in self.cells if not self.matches(c)]

    def to_frame(self) -> pd.DataFrame:
        """One row per cell in grid order."""
        return pd.DataFrame(
            [
                {
                    "dataset": c.dataset,
                    "scheme": c.scheme,
                    "q90": c.q90,
                    "q10": c.q10,
                    "mask": c.mask,
                    "outcome": self.outcome(c),
                }
                for c in self.cells
            ]
        )


def _run_seed(seed: int, d: int, s: int, r: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([seed, d, s, r])


def run_experiment(
    config: ExperimentConfig,
    source: SampleSource | None = None,
    progress: Callable[[str, str], None] | None = None,
) -> QuantileTable:
    """Run every (dataset, scheme, run) job of ``config``.

    Each job seeds its own generator from ``(seed, dataset, scheme, run)``
    so results depend on the seed only, not on execution order.

    Raises:
        ExperimentCellError: Wrapping any failure with its cell coordinates.
    """
    started = time.perf_counter()
    source = source or two_squares(config.intensity)
    families = [d.build() for d in config.datasets]
    schemes = config.strided_schemes()
    scheme_labels = [scheme_label(s) for s in config.schemes]

    cells = []
    for d, family in enumerate(families):
        for s, scheme in enumerate(schemes):
            mask = expected_mask(
                family, scheme, config.n, config.mask_members, config.seed
            )
            min_p = []
            for r in range(config.runs):
                try:
                    ss = _run_seed(config.seed, d, s, r)
                    rng = np.random.Generator(np.random.PCG64(ss))
                    profile = family.generate(config.n, rng)
                    stream = sample_stream(profile, source, rng)
                    report = run_detector(
                        stream,
                        scheme,
                        theta=config.theta,
                        spec=config.kernel,
                        permutations=config.permutations,
                        seed=int(ss.generate_state(1)[0]),
                    )
                except Exception as e:
                    raise ExperimentCellError(
                        family.label, scheme_labels[s], r, e
                    ) from e
                min_p.append(report.min_p)
            q90, q10 = np.quantile(min_p, [0.9, 0.1])
            cells.append(
                CellResult(
                    dataset=family.label,
                    scheme=scheme_labels[s],
                    q90=float(q90),
                    q10=float(q10),
                    mask=mask,
                    min_p=tuple(min_p),
                )
            )
            logger.info(
                "cell %s x %s: q90=%.2f q10=%.2f (%s)",
                family.label,
                scheme_labels[s],
                q90,
                q10,
                mask,
            )
            if progress is not None:
                progress(family.label, scheme_labels[s])

    wall_seconds = time.perf_counter() - started
    logger.info("experiment finished in %.1f s", wall_seconds)
    return QuantileTable(
        datasets=tuple(f.label for f in families),
        schemes=tuple(scheme_labels),
        cells=tuple(cells),
        undetected_floor=config.undetected_floor,
        detected_ceiling=config.detected_ceiling,
        wall_seconds=wall_seconds,
    )
