"""Visualization of detection reports and adversarial profiles."""

from pathlib import Path

import matplotlib
import matplotlib.pyplot as plt
import numpy as np

from ..core.models import AdversarialProfile, DetectionReport
from ..core.windowing import scheme_label

# Use non-interactive backend for headless environments
matplotlib.use("Agg")


def create_pvalue_trace_plot(
    report: DetectionReport, output_path: Path | str, title: str | None = None
) -> None:
    """
    Save a plot of the p-value of every window pair against its split time.

    Args:
        report: Detection report to plot
        output_path: Path where to save the PNG file
        title: Optional custom title for the plot
    """
    t = np.array([r.pair.t for r in report.results])
    p = np.array([r.p_value for r in report.results])
    alarm = p < report.theta

    plt.figure(figsize=(10, 5), dpi=100)
    plt.plot(t, p, "b.-", linewidth=1, markersize=4, label="p-value")
    if alarm.any():
        plt.plot(t[alarm], p[alarm], "rx", markersize=8, label="Alarm")
    plt.axhline(
        y=report.theta,
        color="red",
        linestyle="--",
        alpha=0.6,
        label=f"θ = {report.theta:g}",
    )

    plt.title(
        title or f"Permutation p-values, {scheme_label(report.scheme)}",
        fontsize=14,
        fontweight="bold",
    )
    plt.xlabel("Split time t", fontsize=12)
    plt.ylabel("p-value", fontsize=12)
    plt.ylim(0, 1.02)
    plt.grid(True, alpha=0.3, linestyle="--")
    plt.legend(loc="best", framealpha=0.9)
    plt.tight_layout()

    plt.savefig(Path(output_path), bbox_inches="tight", dpi=100)
    plt.close()


def create_profile_plot(
    profile: AdversarialProfile, output_path: Path | str, title: str | None = None
) -> None:
    """Save a step plot of the mixture weight ``v_i`` along the stream."""
    v = profile.array

    plt.figure(figsize=(10, 4), dpi=100)
    plt.step(np.arange(len(v)), v, where="post", color="purple", linewidth=1.5)
    plt.fill_between(np.arange(len(v)), v, step="post", alpha=0.2, color="purple")

    name = profile.provenance.name or profile.provenance.kind
    plt.title(title or f"Adversarial profile ({name})", fontsize=14, fontweight="bold")
    plt.xlabel("Sample index i", fontsize=12)
    plt.ylabel("Weight of P", fontsize=12)
    plt.ylim(-0.05, 1.05)
    plt.grid(True, alpha=0.3, linestyle="--")
    plt.tight_layout()

    plt.savefig(Path(output_path), bbox_inches="tight", dpi=100)
    plt.close()
