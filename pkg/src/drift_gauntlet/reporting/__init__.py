"""Reporting module for drift_gauntlet."""

from .plots import create_profile_plot, create_pvalue_trace_plot
from .tables import create_quantile_table, render_table, save_report_csv

__all__ = [
    "create_profile_plot",
    "create_pvalue_trace_plot",
    "create_quantile_table",
    "render_table",
    "save_report_csv",
]
