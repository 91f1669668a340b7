"""Synthetic sources and profile-driven streams."""

from .sources import SampleSource, custom_boxes, gaussian_shift, two_squares
from .stream import Stream, read_stream, sample_stream, write_stream

__all__ = [
    "SampleSource",
    "Stream",
    "custom_boxes",
    "gaussian_shift",
    "read_stream",
    "sample_stream",
    "two_squares",
    "write_stream",
]
