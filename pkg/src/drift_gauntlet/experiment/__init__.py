"""Dataset x scheme experiments."""

from .runner import QuantileTable, expected_mask, run_experiment

__all__ = ["QuantileTable", "expected_mask", "run_experiment"]
