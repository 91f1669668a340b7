"""Tests for tabular reports."""

import io

import numpy as np
import pandas as pd
from rich.console import Console

from drift_gauntlet.core import FixedReference, run_detector
from drift_gauntlet.experiment.runner import CellResult, QuantileTable
from drift_gauntlet.reporting.tables import (
    create_detection_summary,
    create_quantile_table,
    quantile_frame,
    render_table,
    report_frame,
    save_report_csv,
)


def _render(renderable) -> str:
    buffer = io.StringIO()
    Console(file=buffer, width=200, color_system=None).print(renderable)
    return buffer.getvalue()


class TestQuantileTables:
    """Tests for rendering experiment grids."""

    def setup_method(self):
        cells = (
            CellResult(
                dataset="Periodic",
                scheme="fixed(100)",
                q90=0.634,
                q10=0.281,
                mask="adversarial",
                min_p=(0.281, 0.634),
            ),
            CellResult(
                dataset="Periodic",
                scheme="sliding",
                q90=0.0,
                q10=0.0,
                mask="detected",
                min_p=(0.0, 0.0),
            ),
        )
        self.table = QuantileTable(
            datasets=("Periodic",), schemes=("fixed(100)", "sliding"), cells=cells
        )

    def test_frame_layout(self):
        df = quantile_frame(self.table)
        assert list(df.columns) == [
            "dataset",
            "fixed(100)",
            "fixed(100) mask",
            "sliding",
            "sliding mask",
        ]
        assert df.loc[0, "fixed(100)"] == "0.63/0.28"
        assert df.loc[0, "fixed(100) mask"] == "adversarial"

    def test_markdown(self):
        text = render_table(self.table, "markdown")
        lines = text.splitlines()
        assert lines[0].startswith("| dataset | fixed(100) |")
        assert lines[1].startswith("|---|")
        assert "| Periodic | 0.63/0.28 | adversarial | 0.00/0.00 | detected |" in text

    def test_csv_matches_markdown(self):
        """Test both formats carry the same numbers."""
        df = pd.read_csv(io.StringIO(render_table(self.table, "csv")))
        assert df.loc[0, "fixed(100)"] == "0.63/0.28"
        assert df.loc[0, "sliding"] in render_table(self.table, "markdown")

    def test_empty_grid_is_header_only(self):
        empty = QuantileTable(datasets=(), schemes=("sliding",), cells=())
        assert render_table(empty, "csv").strip() == "dataset,sliding,sliding mask"
        assert len(render_table(empty, "markdown").splitlines()) == 2

    def test_unknown_format(self):
        try:
            render_table(self.table, "html")  # type: ignore[arg-type]
        except ValueError as e:
            assert "html" in str(e)
        else:
            raise AssertionError("expected ValueError")

    def test_rich_table(self):
        text = _render(create_quantile_table(self.table))
        assert "0.63/0.28" in text
        assert "2/2 cells match theory" in text


class TestDetectionTables:
    """Tests for detection report tables."""

    def setup_method(self):
        rng = np.random.default_rng(3)
        x = rng.uniform(size=(30, 2))
        x[15:, 1] += 4.0
        self.report = run_detector(
            x, FixedReference(a=10, l=5, stride=5), permutations=99
        )

    def test_report_frame(self):
        df = report_frame(self.report)
        assert list(df.columns) == [
            "pair_start",
            "split",
            "pair_end",
            "w1",
            "w2",
            "mmd2",
            "p",
            "alarm",
        ]
        assert df["split"].tolist() == [10, 15, 20, 25]
        assert df.loc[0, "w1"] == "[0,10)"
        assert df["alarm"].tolist() == (df["p"] < self.report.theta).tolist()

    def test_save_report_csv(self, tmp_path):
        path = tmp_path / "report.csv"
        save_report_csv(self.report, path)
        df = pd.read_csv(path)
        assert len(df) == len(self.report.results)

    def test_detection_summary(self):
        text = _render(create_detection_summary(self.report))
        assert "fixed(10)" in text
        assert "drift detected" in text
        assert "Minimum p" in text
