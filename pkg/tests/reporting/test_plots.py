"""Tests for plotting functionality."""

import tempfile
from pathlib import Path

import numpy as np

from drift_gauntlet.adversaries import gen_periodic
from drift_gauntlet.core import SlidingPair, run_detector
from drift_gauntlet.reporting.plots import create_profile_plot, create_pvalue_trace_plot


class TestPlots:
    """Test plotting functions."""

    def create_test_report(self):
        """Detector report on a stream with an abrupt shift halfway."""
        rng = np.random.default_rng(0)
        x = rng.uniform(size=(40, 2))
        x[20:, 0] += 3.0
        return run_detector(x, SlidingPair(l=5, stride=2), permutations=49)

    def test_create_pvalue_trace_plot(self):
        """Test p-value trace plot creation."""
        report = self.create_test_report()

        with tempfile.NamedTemporaryFile(suffix=".png", delete=False) as tmp_file:
            tmp_path = Path(tmp_file.name)

        try:
            create_pvalue_trace_plot(report, tmp_path)
            assert tmp_path.exists()
            assert tmp_path.stat().st_size > 0
        finally:
            tmp_path.unlink(missing_ok=True)

    def test_create_pvalue_trace_plot_custom_title(self, tmp_path):
        """Test p-value trace plot with a custom title and no alarms."""
        x = np.random.default_rng(1).uniform(size=(20, 1))
        report = run_detector(x, SlidingPair(l=5), theta=0.0, permutations=9)
        path = tmp_path / "trace.png"
        create_pvalue_trace_plot(report, path, title="Null stream")
        assert path.stat().st_size > 0

    def test_create_profile_plot(self, tmp_path):
        """Test profile step plot creation."""
        path = tmp_path / "profile.png"
        create_profile_plot(gen_periodic(10, 5, 100), path)
        assert path.exists()
        assert path.stat().st_size > 0
