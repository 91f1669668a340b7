"""Tabular output for experiment grids and detection reports."""

from pathlib import Path
from typing import Literal

import pandas as pd
from rich.table import Table

from ..core.models import DetectionReport
from ..core.windowing import scheme_label
from ..experiment.runner import QuantileTable

TableFormat = Literal["csv", "markdown"]


def quantile_frame(table: QuantileTable) -> pd.DataFrame:
    """Wide layout with one row per dataset.

    Every scheme gets a ``q90/q10`` column followed by its mask column, in
    the scheme order of the experiment.
    """
    columns = ["dataset"]
    for scheme in table.schemes:
        columns += [scheme, f"{scheme} mask"]
    rows = []
    for dataset in table.datasets:
        row = {"dataset": dataset}
        for scheme in table.schemes:
            cell = table.cell(dataset, scheme)
            row[scheme] = f"{cell.q90:.2f}/{cell.q10:.2f}"
            row[f"{scheme} mask"] = cell.mask
        rows.append(row)
    return pd.DataFrame(rows, columns=columns)


def _markdown(df: pd.DataFrame) -> str:
    header = "| " + " | ".join(df.columns) + " |"
    rule = "|" + "|".join("---" for _ in df.columns) + "|"
    body = [
        "| " + " | ".join(str(v) for v in row) + " |" for row in df.itertuples(False)
    ]
    return "\n".join([header, rule, *body]) + "\n"


def render_table(table: QuantileTable, format: TableFormat = "markdown") -> str:
    """Render the quantile grid as CSV or a markdown pipe table."""
    df = quantile_frame(table)
    if format == "csv":
        return str(df.to_csv(index=False))
    if format == "markdown":
        return _markdown(df)
    raise ValueError(f"unknown table format {format!r}")


def create_quantile_table(table: QuantileTable) -> Table:
    """Rich table of the grid; adversarial cells underlined, mismatches in red."""
    rich_table = Table(title="Minimum p-value quantiles (q90/q10)")
    rich_table.add_column("Dataset", style="cyan", no_wrap=True)
    for scheme in table.schemes:
        rich_table.add_column(scheme, justify="center")

    for dataset in table.datasets:
        values = []
        for scheme in table.schemes:
            cell = table.cell(dataset, scheme)
            style = "underline" if cell.mask == "adversarial" else ""
            if not table.matches(cell):
                style = f"{style} red".strip()
            text = f"{cell.q90:.2f}/{cell.q10:.2f}"
            values.append(f"[{style}]{text}[/]" if style else text)
        rich_table.add_row(dataset, *values)

    rich_table.caption = (
        f"{table.n_matches}/{len(table.cells)} cells match theory "
        f"(underlined: adversarial)"
    )
    return rich_table


def report_frame(report: DetectionReport) -> pd.DataFrame:
    """One row per tested window pair."""
    return pd.DataFrame(
        [
            {
                "pair_start": r.pair.s1,
                "split": r.pair.t,
                "pair_end": r.pair.e2,
                "w1": f"[{r.pair.s1},{r.pair.e1})",
                "w2": f"[{r.pair.s2},{r.pair.e2})",
                "mmd2": r.mmd2,
                "p": r.p_value,
                "alarm": r.p_value < report.theta,
            }
            for r in report.results
        ],
        columns=["pair_start", "split", "pair_end", "w1", "w2", "mmd2", "p", "alarm"],
    )


def save_report_csv(report: DetectionReport, output_path: Path | str) -> None:
    report_frame(report).to_csv(Path(output_path), index=False)


def create_detection_summary(report: DetectionReport) -> Table:
    table = Table(title="Drift Detection Report")
    table.add_column("Metric", style="cyan", no_wrap=True)
    table.add_column("Value", style="green")

    table.add_row("Scheme", scheme_label(report.scheme))
    table.add_row("Window pairs", str(len(report.results)))
    table.add_row("Permutations", str(report.permutations))
    table.add_row("Threshold", f"{report.theta:g}")
    table.add_row("Minimum p", f"{report.min_p:.4f}")
    table.add_row("Alarms", str(len(report.alarms)))
    if report.alarms:
        first = report.alarms[0]
        table.add_row("First alarm", str(first))
    verdict = "[red]drift detected[/]" if report.drift_detected else "no drift"
    table.add_row("Verdict", verdict)
    return table
