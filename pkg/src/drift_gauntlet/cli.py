"""Command-line interface for drift_gauntlet."""

import importlib.metadata
import json
import logging
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any

import numpy as np
import typer
import yaml
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table

from .adversaries.base import get_available_families, parse_family
from .adversaries.limiting import (
    parse_function,
    parse_limiting_scheme,
    verify_function_limiting,
)
from .adversaries.nullspace import binarize_profile, nullspace_basis, solve_nullspace
from .adversaries.verify import ProfileVerification, verify_profile
from .config import DEFAULT_SEED, SEED_ENVVAR, ExperimentConfig
from .core.detector import run_combined, run_detector
from .core.models import AdversarialProfile, KernelSpec, WindowScheme
from .core.windowing import (
    build_weight_matrix,
    enumerate_pairs,
    parse_scheme,
    scheme_label,
)
from .data.sources import make_source
from .data.stream import read_stream, sample_stream, write_stream
from .errors import (
    BinarizationInfeasible,
    DriftGauntletError,
    EmptyScheme,
    NoAdversarialExists,
)
from .experiment.runner import run_experiment
from .reporting.plots import create_profile_plot, create_pvalue_trace_plot
from .reporting.tables import (
    create_detection_summary,
    create_quantile_table,
    render_table,
    save_report_csv,
)

app = typer.Typer(
    name="drift-gauntlet",
    help="Adversarial streams for two-window drift detectors",
    no_args_is_help=True,
)
console = Console()

EXIT_FAILURE = 1
EXIT_NO_ADVERSARIAL = 2
EXIT_DRIFT = 3
EXIT_INPUT = 4

SEED_HELP = f"Random seed (env {SEED_ENVVAR}, default {DEFAULT_SEED})"


def configure_logging(verbose: bool) -> None:
    """Route package logs through a rich handler on stderr."""
    logger = logging.getLogger("drift_gauntlet")
    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)
    logger.addHandler(
        RichHandler(console=Console(stderr=True), show_path=False, markup=False)
    )
    logger.setLevel(logging.INFO if verbose else logging.WARNING)


@contextmanager
def exit_codes() -> Iterator[None]:
    """Map library errors onto the CLI exit codes."""
    try:
        yield
    except (NoAdversarialExists, EmptyScheme) as e:
        console.print(f"[red]No adversarial: {e}[/red]")
        raise typer.Exit(EXIT_NO_ADVERSARIAL) from e
    except (
        ValueError,
        ValidationError,
        FileNotFoundError,
        yaml.YAMLError,
    ) as e:
        console.print(f"[red]Input error: {e}[/red]")
        raise typer.Exit(EXIT_INPUT) from e
    except DriftGauntletError as e:
        console.print(f"[red]Error: {e}[/red]")
        raise typer.Exit(EXIT_FAILURE) from e


@app.callback()
def main_options(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress"),
) -> None:
    """Adversarial streams for two-window drift detectors."""
    configure_logging(verbose)


def _sidecar_path(output: Path) -> Path:
    return output.with_name(output.name + ".profile.json")


def _certify(profile: AdversarialProfile, schemes: list[WindowScheme]) -> list[dict]:
    certificates = []
    for scheme in schemes:
        try:
            check = verify_profile(profile, scheme)
        except EmptyScheme:
            continue
        certificates.append(
            {
                "scheme": scheme.model_dump(mode="json"),
                "label": scheme_label(scheme),
                **check.model_dump(),
            }
        )
    return certificates


@app.command()
def generate(
    output: Path = typer.Option(..., "--output", "-o", help="Stream file (JSONL)"),
    scheme: str | None = typer.Option(
        None, "--scheme", help="Scheme to solve for (JSON, inline or file)"
    ),
    family: str | None = typer.Option(
        None, "--family", help="Profile family, e.g. periodic:l=100,duty=50"
    ),
    n: int = typer.Option(1000, "--n", help="Stream length"),
    source: str = typer.Option("two_squares", "--source", help="Sample source"),
    intensity: float = typer.Option(5.0, "--intensity", help="Drift intensity"),
    seed: int = typer.Option(
        DEFAULT_SEED, "--seed", envvar=SEED_ENVVAR, help=SEED_HELP
    ),
    binarize: bool = typer.Option(
        True, "--binarize/--no-binarize", help="Round solved profiles to {0, 1}"
    ),
    plot: Path | None = typer.Option(None, "--plot", help="Save a profile plot"),
) -> None:
    """Build an adversarial profile and sample a stream from it."""
    if (scheme is None) == (family is None):
        console.print("[red]Error: pass exactly one of --scheme or --family[/red]")
        raise typer.Exit(EXIT_INPUT)

    rng = np.random.Generator(np.random.PCG64(seed))
    with exit_codes():
        if scheme is not None:
            target = parse_scheme(scheme)
            W = build_weight_matrix(target, n)
            profile = solve_nullspace(W)
            if binarize:
                try:
                    profile = binarize_profile(profile, W)
                except BinarizationInfeasible as e:
                    console.print(f"[yellow]Keeping fractional profile: {e}[/yellow]")
            targets = [target]
        else:
            fam = parse_family(family or "")
            profile = fam.generate(n, rng)
            targets = fam.target_schemes()

        stream = sample_stream(profile, make_source(source, intensity), rng, seed)
        write_stream(stream, output)
        sidecar = {
            "n": n,
            "seed": seed,
            "profile": profile.model_dump(mode="json"),
            "certificates": _certify(profile, targets),
        }
        _sidecar_path(output).write_text(json.dumps(sidecar, indent=2) + "\n")

    console.print(f"[green]Stream saved to: {output}[/green]")
    console.print(f"[green]Profile saved to: {_sidecar_path(output)}[/green]")
    for cert in sidecar["certificates"]:
        status = "exact zero" if cert["exact_zero"] else f"{cert['max_residual']:.3g}"
        console.print(f"  residual vs [cyan]{cert['label']}[/cyan]: {status}")

    if plot is not None:
        create_profile_plot(profile, plot)
        console.print(f"[green]Profile plot saved to: {plot}[/green]")


def _kernel_spec(kernel: str, bandwidth: float | None) -> KernelSpec:
    return KernelSpec(kind=kernel, bandwidth=bandwidth)  # type: ignore[arg-type]


@app.command()
def detect(
    stream_path: Path = typer.Argument(..., help="Stream file (JSONL)"),
    scheme: str = typer.Option(..., "--scheme", help="Window scheme"),
    theta: float = typer.Option(0.05, "--theta", help="Alarm threshold on p"),
    permutations: int = typer.Option(500, "--permutations", help="Permutations"),
    kernel: str = typer.Option("rbf", "--kernel", help="rbf or linear"),
    bandwidth: float | None = typer.Option(
        None, "--bandwidth", help="RBF bandwidth (default: median heuristic)"
    ),
    seed: int = typer.Option(
        DEFAULT_SEED, "--seed", envvar=SEED_ENVVAR, help=SEED_HELP
    ),
    output: Path | None = typer.Option(None, "--output", "-o", help="Report file"),
    format: str = typer.Option("json", "--format", help="Report format: json or csv"),
    plot: Path | None = typer.Option(None, "--plot", help="Save a p-value trace"),
) -> None:
    """Run the two-window detector on a stream. Exits 3 when drift is alerted."""
    with exit_codes():
        if format not in ("json", "csv"):
            raise ValueError(f"unknown report format {format!r}")
        stream = read_stream(stream_path)
        report = run_detector(
            stream,
            parse_scheme(scheme),
            theta=theta,
            spec=_kernel_spec(kernel, bandwidth),
            permutations=permutations,
            seed=seed,
        )

    console.print(create_detection_summary(report))
    if output is not None:
        if format == "csv":
            save_report_csv(report, output)
        else:
            report.to_json(output)
        console.print(f"[green]Report saved to: {output}[/green]")
    if plot is not None:
        create_pvalue_trace_plot(report, plot)
        console.print(f"[green]p-value plot saved to: {plot}[/green]")

    if report.drift_detected:
        raise typer.Exit(EXIT_DRIFT)


def _load_profile(path: Path) -> AdversarialProfile:
    """Profile from a stream file, a generate sidecar or a profile JSON."""
    if path.suffix == ".jsonl":
        stream = read_stream(path)
        return AdversarialProfile(v=tuple(float(x) for x in stream.v))
    data: Any = json.loads(path.read_text(encoding="utf-8"))
    if isinstance(data, dict) and "profile" in data:
        data = data["profile"]
    return AdversarialProfile.model_validate(data)


def _print_profile_verification(check: ProfileVerification) -> None:
    table = Table(title="Profile Verification")
    table.add_column("Metric", style="cyan")
    table.add_column("Value", style="green")
    table.add_row("Length", str(check.n))
    table.add_row("Max residual", f"{check.max_residual:.3g}")
    table.add_row("Exact zero", str(check.exact_zero))
    table.add_row("Non-constant", str(check.is_nonconstant))
    table.add_row("Verdict", check.verdict)
    console.print(table)


@app.command()
def verify(
    scheme: str = typer.Option(..., "--scheme", help="Window scheme"),
    profile: Path | None = typer.Option(
        None, "--profile", help="Profile JSON, generate sidecar or stream file"
    ),
    function: str | None = typer.Option(
        None, "--function", help="Adversarial function (JSON, inline or file)"
    ),
    n: int | None = typer.Option(None, "--n", help="Expected profile length"),
    t_min: float | None = typer.Option(None, "--t-min", help="First split time"),
    t_max: float | None = typer.Option(None, "--t-max", help="Last split time"),
    points: int = typer.Option(50, "--points", help="Split times on the grid"),
    quad_points: int = typer.Option(512, "--quad-points", help="Simpson panels"),
    tol: float = typer.Option(1e-6, "--tol", help="Violation tolerance"),
    output: Path | None = typer.Option(None, "--output", "-o", help="Report JSON"),
) -> None:
    """Check whether a profile or function hides its drift from a scheme."""
    if (profile is None) == (function is None):
        console.print("[red]Error: pass exactly one of --profile or --function[/red]")
        raise typer.Exit(EXIT_INPUT)

    with exit_codes():
        if profile is not None:
            target = parse_scheme(scheme)
            check = verify_profile(_load_profile(profile), target, n)
            _print_profile_verification(check)
            result: dict[str, Any] = {**check.model_dump(), "verdict": check.verdict}
        else:
            f = parse_function(function or "")
            grid = None
            if t_min is not None and t_max is not None:
                grid = np.linspace(t_min, t_max, points)
            windows = parse_limiting_scheme(scheme)
            limiting = verify_function_limiting(f, windows, grid, quad_points)
            if limiting.max_violation > tol:
                verdict = "detectable"
            elif not limiting.range_ok:
                verdict = "kernel member, range violated"
            else:
                verdict = "adversarial"
            console.print(f"Max violation: {limiting.max_violation:.3g}")
            console.print(f"Range within [0, 1]: {limiting.range_ok}")
            console.print(f"Verdict: [bold]{verdict}[/bold]")
            result = {**limiting.model_dump(), "verdict": verdict}

    if output is not None:
        output.write_text(json.dumps(result, indent=2) + "\n")
        console.print(f"[green]Verification saved to: {output}[/green]")


@app.command()
def nullspace(
    scheme: str = typer.Option(..., "--scheme", help="Window scheme"),
    n: int = typer.Option(..., "--n", help="Stream length"),
    exact: bool = typer.Option(False, "--exact", help="Rational elimination"),
    output: Path | None = typer.Option(None, "--output", "-o", help="Basis JSON"),
) -> None:
    """Export a basis of the profiles no window pair can tell apart."""
    with exit_codes():
        W = build_weight_matrix(parse_scheme(scheme), n)
        basis = nullspace_basis(W, exact=exact)

    console.print(f"Window pairs: {len(W.pairs)}")
    console.print(f"Null-space dimension: {basis.dimension}")
    if basis.has_nonconstant:
        console.print("[green]Non-constant directions exist[/green]")
    else:
        console.print("[yellow]Only constant profiles (no adversarial)[/yellow]")
    if output is not None:
        output.write_text(basis.model_dump_json(indent=2) + "\n")
        console.print(f"[green]Basis saved to: {output}[/green]")


@app.command()
def combine(
    stream_path: Path = typer.Argument(..., help="Stream file (JSONL)"),
    schemes: list[str] = typer.Option(
        ..., "--scheme", help="Member scheme; repeat to combine detectors"
    ),
    theta: float = typer.Option(0.05, "--theta", help="Alarm threshold on p"),
    permutations: int = typer.Option(500, "--permutations", help="Permutations"),
    seed: int = typer.Option(
        DEFAULT_SEED, "--seed", envvar=SEED_ENVVAR, help=SEED_HELP
    ),
    output: Path | None = typer.Option(None, "--output", "-o", help="Report JSON"),
) -> None:
    """Run several detectors as one; alerts when any member alerts."""
    with exit_codes():
        stream = read_stream(stream_path)
        members = [parse_scheme(s) for s in schemes]
        report = run_combined(
            stream, members, theta=theta, permutations=permutations, seed=seed
        )

    table = Table(title="Combined Detector")
    table.add_column("Scheme", style="cyan")
    table.add_column("Alarms", style="green")
    for member in members:
        try:
            pairs = set(enumerate_pairs(member, len(stream)))
        except EmptyScheme:
            pairs = set()
        count = sum(1 for pair in report.alarms if pair in pairs)
        table.add_row(scheme_label(member), str(count))
    table.add_row("[bold]union[/bold]", str(len(report.alarms)))
    console.print(table)

    if output is not None:
        report.to_json(output)
        console.print(f"[green]Report saved to: {output}[/green]")
    if report.drift_detected:
        raise typer.Exit(EXIT_DRIFT)


@app.command()
def experiment(
    config: Path | None = typer.Option(
        None, "--config", help="Path to YAML or JSON configuration file"
    ),
    full_scale: bool = typer.Option(
        False, "--full-scale", help="500 runs, 2500 permutations, stride 1"
    ),
    n: int | None = typer.Option(None, "--n", help="Stream length"),
    runs: int | None = typer.Option(None, "--runs", help="Runs per cell"),
    permutations: int | None = typer.Option(
        None, "--permutations", help="Permutations per test"
    ),
    stride: int | None = typer.Option(None, "--stride", help="Split-time step"),
    theta: float | None = typer.Option(None, "--theta", help="Alarm threshold"),
    intensity: float | None = typer.Option(
        None, "--intensity", help="Two-squares drift intensity"
    ),
    seed: int | None = typer.Option(None, "--seed", envvar=SEED_ENVVAR, help=SEED_HELP),
    output: Path | None = typer.Option(None, "--output", "-o", help="Table file"),
    format: str = typer.Option(
        "markdown", "--format", help="Table format: csv or markdown"
    ),
) -> None:
    """Reproduce the dataset x scheme grid of minimum p-value quantiles."""
    with exit_codes():
        if format not in ("csv", "markdown"):
            raise ValueError(f"unknown table format {format!r}")
        if config is not None:
            cfg = ExperimentConfig.from_yaml(config)
        elif full_scale:
            cfg = ExperimentConfig.full_scale()
        else:
            cfg = ExperimentConfig()
        cfg = cfg.merge_cli_args(
            n=n,
            runs=runs,
            permutations=permutations,
            stride=stride,
            theta=theta,
            intensity=intensity,
            seed=seed,
        )

    cells = len(cfg.datasets) * len(cfg.schemes)
    console.print(
        f"[green]Running {cells} cells x {cfg.runs} runs "
        f"(n={cfg.n}, {cfg.permutations} permutations)...[/green]"
    )
    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        console=console,
    ) as progress:
        task = progress.add_task("Running experiment...", total=None)

        def advance(dataset: str, scheme: str) -> None:
            progress.update(task, description=f"Finished {dataset} x {scheme}")

        with exit_codes():
            table = run_experiment(cfg, progress=advance)
        progress.update(task, description="Experiment complete!")

    console.print(create_quantile_table(table))
    console.print(f"Wall time: {table.wall_seconds:.1f} s")
    text = render_table(table, format)  # type: ignore[arg-type]
    if output is not None:
        output.write_text(text)
        console.print(f"[green]Table saved to: {output}[/green]")

    for cell in table.mismatches():
        console.print(
            f"[yellow]Mismatch: {cell.dataset} x {cell.scheme} "
            f"(theory: {cell.mask}, q90/q10 {cell.q90:.2f}/{cell.q10:.2f})[/yellow]"
        )
    if table.n_matches < cfg.min_matches:
        console.print(
            f"[red]Only {table.n_matches} cells match theory "
            f"(need {cfg.min_matches})[/red]"
        )
        raise typer.Exit(EXIT_FAILURE)


@app.command()
def list_families() -> None:
    """List all available adversarial profile families."""
    families = get_available_families()

    if not families:
        console.print("[yellow]No families found[/yellow]")
        return

    console.print("[green]Available profile families:[/green]")
    for name, family_cls in families.items():
        doc = family_cls.__doc__ or "No description available"
        first_line = doc.split("\n")[0].strip()
        console.print(f"  [cyan]{name}[/cyan]: {first_line}")


@app.command()
def version() -> None:
    """Show version information."""
    try:
        version = importlib.metadata.version("drift_gauntlet")
        console.print(f"drift-gauntlet v{version}")
    except importlib.metadata.PackageNotFoundError:
        console.print("drift-gauntlet (development version)")


def main() -> None:
    """Main entry point for the CLI."""
    try:
        app()
    except KeyboardInterrupt:
        console.print("\n[yellow]Interrupted by user[/yellow]")
        sys.exit(130)
    except Exception as e:
        console.print(f"[red]Unexpected error: {e}[/red]")
        sys.exit(1)


if __name__ == "__main__":
    main()
