"""Profile-driven stream sampling and the JSONL stream format.

A stream file starts with one header line holding the metadata, followed
by one record per sample::

    {"format": "drift_gauntlet.stream", "version": 1, "metadata": {...}}
    {"i": 0, "x": [0.25, 0.75], "v": 1, "c": "P"}
"""

import json
import logging
from collections.abc import Iterator
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, ValidationError

from ..core.models import AdversarialProfile, Provenance
from ..errors import ParseError
from .sources import SampleSource

logger = logging.getLogger(__name__)

FORMAT_NAME = "drift_gauntlet.stream"
FORMAT_VERSION = 1


class StreamMetadata(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int
    dim: int
    source: SampleSource | None = None
    provenance: Provenance | None = None
    seed: int | None = None


@dataclass(frozen=True)
class Stream:
    """Sampled points with the mixture weight and component behind each one.

    ``from_p[i]`` is True when sample ``i`` was drawn from ``P``.
    """

    x: NDArray[np.float64]
    v: NDArray[np.float64]
    from_p: NDArray[np.bool_]
    metadata: StreamMetadata

    def __post_init__(self) -> None:
        n = len(self.x)
        if self.x.ndim != 2 or len(self.v) != n or len(self.from_p) != n:
            raise ValueError("x, v and from_p must describe the same samples")

    def __len__(self) -> int:
        return len(self.x)

    @property
    def components(self) -> NDArray[np.str_]:
        return np.where(self.from_p, "P", "Q")

    def records(self) -> Iterator[dict[str, Any]]:
        for i in range(len(self)):
            yield {
                "i": i,
                "x": self.x[i].tolist(),
                "v": float(self.v[i]),
                "c": "P" if self.from_p[i] else "Q",
            }


def sample_stream(
    profile: AdversarialProfile,
    source: SampleSource,
    rng: np.random.Generator,
    seed: int | None = None,
) -> Stream:
    """Draw sample ``i`` from ``v_i P + (1 - v_i) Q``.

    A uniform draw below ``v_i`` selects ``P``, so weights 0 and 1 pick the
    component with certainty. ``seed`` is only recorded in the metadata.
    """
    v = profile.array
    n = len(v)
    from_p = rng.random(n) < v
    xp = source.P.sample(rng, n)
    xq = source.Q.sample(rng, n)
    x = np.where(from_p[:, None], xp, xq)
    metadata = StreamMetadata(
        n=n, dim=source.dim, source=source, provenance=profile.provenance, seed=seed
    )
    logger.info("sampled %d points, %d from P", n, int(from_p.sum()))
    return Stream(x=x, v=v.copy(), from_p=from_p, metadata=metadata)


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _record_line(i: int, x: NDArray[np.float64], v: float, from_p: bool) -> str:
    coords = ", ".join(_fmt(c) for c in x)
    c = "P" if from_p else "Q"
    return f'{{"i": {i}, "x": [{coords}], "v": {_fmt(v)}, "c": "{c}"}}'


def write_stream(stream: Stream, path: Path | str) -> None:
    """Write the header line and one record per sample; floats keep 17 digits."""
    header = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "metadata": stream.metadata.model_dump(mode="json"),
    }
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(header, sort_keys=True) + "\n")
        for i in range(len(stream)):
            line = _record_line(i, stream.x[i], stream.v[i], bool(stream.from_p[i]))
            f.write(line + "\n")


def _parse_header(line: str) -> StreamMetadata:
    try:
        header = json.loads(line)
    except json.JSONDecodeError as e:
        raise ParseError(f"header is not JSON: {e.msg}", 1) from e
    if not isinstance(header, dict) or header.get("format") != FORMAT_NAME:
        raise ParseError(f"not a {FORMAT_NAME} file", 1)
    if header.get("version") != FORMAT_VERSION:
        raise ParseError(f"unsupported version {header.get('version')!r}", 1)
    try:
        return StreamMetadata.model_validate(header.get("metadata"))
    except ValidationError as e:
        raise ParseError(f"invalid metadata: {e.error_count()} error(s)", 1) from e


def read_stream(path: Path | str) -> Stream:
    """Load a stream file.

    Raises:
        ParseError: On the first malformed, out-of-order or missing record,
            with its 1-based line number.
    """
    with open(path, encoding="utf-8") as f:
        lines = f.read().splitlines()
    if not lines:
        raise ParseError("empty stream file", 1)
    metadata = _parse_header(lines[0])

    x = np.empty((metadata.n, metadata.dim))
    v = np.empty(metadata.n)
    from_p = np.empty(metadata.n, dtype=bool)
    body = lines[1:]
    for k, line in enumerate(body):
        line_number = k + 2
        if k >= metadata.n:
            raise ParseError(
                f"more records than the declared n={metadata.n}", line_number
            )
        try:
            record = json.loads(line)
            i, xi, vi, ci = record["i"], record["x"], record["v"], record["c"]
        except json.JSONDecodeError as e:
            raise ParseError(f"malformed record: {e.msg}", line_number) from e
        except (KeyError, TypeError) as e:
            raise ParseError(f"record is missing field {e}", line_number) from e
        if i != k:
            raise ParseError(f"expected index {k}, found {i!r}", line_number)
        if ci not in ("P", "Q"):
            raise ParseError(f"component must be P or Q, found {ci!r}", line_number)
        try:
            point = np.asarray(xi, dtype=np.float64)
            weight = float(vi)
        except (TypeError, ValueError) as e:
            raise ParseError(f"non-numeric point or weight: {e}", line_number) from e
        if point.shape != (metadata.dim,):
            raise ParseError(
                f"point has shape {point.shape}, header says dimension {metadata.dim}",
                line_number,
            )
        x[k], v[k], from_p[k] = point, weight, ci == "P"
    if len(body) < metadata.n:
        raise ParseError(
            f"stream ends after {len(body)} of {metadata.n} records", len(body) + 2
        )
    return Stream(x=x, v=v, from_p=from_p, metadata=metadata)
