"""Command-line interface for veblen-dyn."""

from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterator, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table

from veblen_dyn.data import ArtifactWriter
from veblen_dyn.domain import ConfigError, SweepMode, SweepParam
from veblen_dyn.plots import (
    basin_figure,
    isocline_figure,
    orbit_diagram_figure,
    save_png,
    time_series_figure,
)
from veblen_dyn.services import (
    BasinService,
    BifurcationService,
    EquilibriumService,
    IsoclineService,
    SimulationService,
    TaxCheckService,
)
from veblen_dyn.utils import (
    PRESETS,
    ExperimentConfig,
    RuntimeSettings,
    preset_names,
    resolve_config,
    setup_logging,
)

EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

app = typer.Typer(
    name="veblen-dyn",
    help="Green preferences, Veblen effects and environmental dynamics in an OLG economy",
    add_completion=False,
)
console = Console(stderr=True)


@dataclass
class AppState:
    """Global options shared by every command."""

    preset: Optional[str]
    config_path: Optional[Path]
    params: dict[str, float]
    out: Path
    png: bool
    threads: int


def _drop_none(values: dict[str, Any]) -> dict[str, Any]:
    return {key: value for key, value in values.items() if value is not None}


@contextmanager
def _guard() -> Iterator[None]:
    """Map configuration and library errors to exit codes."""
    try:
        yield
    except typer.Exit:
        raise
    except (ConfigError, ValidationError) as exc:
        console.print(f"[red]Error:[/red] {exc}")
        raise typer.Exit(EXIT_CONFIG)
    except (ArithmeticError, RuntimeError, ValueError, OSError) as exc:
        console.print(f"[red]Error:[/red] {type(exc).__name__}: {exc}")
        raise typer.Exit(EXIT_RUNTIME)


def load_config(ctx: typer.Context, **sections: dict[str, Any]) -> ExperimentConfig:
    """Resolve preset, config file and flag overrides into one config."""
    state: AppState = ctx.obj
    overrides: dict[str, Any] = {}
    if state.params:
        overrides["params"] = state.params
    for name, values in sections.items():
        values = _drop_none(values)
        if values:
            overrides[name] = values
    return resolve_config(state.preset, state.config_path, overrides)


def get_writer(ctx: typer.Context) -> ArtifactWriter:
    return ArtifactWriter(ctx.obj.out)


def _progress() -> Progress:
    return Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        console=console,
        transient=True,
    )


@app.callback()
def main(
    ctx: typer.Context,
    preset: Optional[str] = typer.Option(None, "--preset", help="Named parameter set, e.g. fig7b"),
    config: Optional[Path] = typer.Option(None, "--config", help="JSON or YAML config file"),
    alpha: Optional[float] = typer.Option(None, "--alpha", help="Inertia of green preferences"),
    beta: Optional[float] = typer.Option(None, "--beta", help="Intensity of choice"),
    rho: Optional[float] = typer.Option(None, "--rho", help="Materialistic trend"),
    sigma: Optional[float] = typer.Option(None, "--sigma", help="Conservation effectiveness"),
    gamma: Optional[float] = typer.Option(None, "--gamma", help="Consumption pollution"),
    w: Optional[float] = typer.Option(None, "--w", help="Wage"),
    c_ref: Optional[float] = typer.Option(None, "--c-ref", help="Reference consumption"),
    v: Optional[float] = typer.Option(None, "--v", help="Weight of status consumption"),
    tau: Optional[float] = typer.Option(None, "--tau", help="Consumption tax rate"),
    out: Path = typer.Option(Path("."), "--out", help="Output directory"),
    png: bool = typer.Option(False, "--png", help="Also write PNG plots"),
    threads: Optional[int] = typer.Option(None, "--threads", help="Worker threads"),
    verbose: bool = typer.Option(False, "--verbose", help="Debug logging"),
):
    """Run the experiments of the environmental Veblen model."""
    with _guard():
        settings = RuntimeSettings()
        setup_logging("DEBUG" if verbose else settings.log_level, console)
        n_threads = threads if threads is not None else settings.threads
        if n_threads < 1:
            raise ConfigError(f"--threads must be at least 1, got {n_threads}")

    ctx.obj = AppState(
        preset=preset,
        config_path=config,
        params=_drop_none(
            {
                "alpha": alpha,
                "beta": beta,
                "rho": rho,
                "sigma": sigma,
                "gamma": gamma,
                "w": w,
                "c_ref": c_ref,
                "v": v,
                "tau": tau,
            }
        ),
        out=out,
        png=png,
        threads=n_threads,
    )


@app.command()
def simulate(
    ctx: typer.Context,
    initial_e: Optional[float] = typer.Option(None, "--initial-e", help="Initial environmental quality"),
    initial_pi: Optional[float] = typer.Option(None, "--initial-pi", help="Initial green preference"),
    transient: Optional[int] = typer.Option(None, "--transient", help="Steps discarded"),
    record: Optional[int] = typer.Option(None, "--record", help="Steps recorded"),
    choices: Optional[bool] = typer.Option(
        None, "--choices/--no-choices", help="Add household choice columns"
    ),
):
    """Simulate one orbit and write orbit.csv."""
    with _guard():
        config = load_config(
            ctx,
            simulate={
                "initial_e": initial_e,
                "initial_pi": initial_pi,
                "transient": transient,
                "record": record,
                "choices": choices,
            },
        )
        frame = SimulationService(config).run()
        writer = get_writer(ctx)
        path = writer.save_table("orbit.csv", frame)
        if ctx.obj.png and not frame.empty:
            save_png(time_series_figure(frame), writer.path_for("orbit.png"))

    console.print(f"[green]✓[/green] Wrote {len(frame)} states to {path}")
    if not frame.empty:
        last = frame.iloc[-1]
        console.print(f"Final state: e={last['e']:.10g}, pi={last['pi']:.10g}")


@app.command()
def equilibria(ctx: typer.Context):
    """Find every steady state, classify its stability and write equilibria.csv."""
    with _guard():
        config = load_config(ctx)
        frame = EquilibriumService(config).table()
        path = get_writer(ctx).save_table("equilibria.csv", frame)

    table = Table(title="Steady states")
    for column in ("label", "e_bar", "pi_bar", "eta", "det", "verdict"):
        table.add_column(column, style="cyan" if column == "label" else None)
    for row in frame.itertuples(index=False):
        table.add_row(
            row.label,
            f"{row.e_bar:.6g}",
            f"{row.pi_bar:.6g}",
            f"{row.eta:.6g}",
            f"{row.det:.6g}",
            row.verdict,
        )
    console.print(table)
    console.print(f"[green]✓[/green] Wrote {path}")


@app.command()
def bifurcation(
    ctx: typer.Context,
    param: Optional[SweepParam] = typer.Option(None, "--param", help="Swept parameter"),
    start: Optional[float] = typer.Option(None, "--start", help="First grid value"),
    stop: Optional[float] = typer.Option(None, "--stop", help="Last grid value"),
    steps: Optional[int] = typer.Option(None, "--steps", help="Grid size"),
    mode: Optional[SweepMode] = typer.Option(None, "--mode", help="Initial condition policy"),
    transient: Optional[int] = typer.Option(None, "--transient", help="Steps discarded per value"),
    record: Optional[int] = typer.Option(None, "--record", help="Steps recorded per value"),
):
    """Orbit diagram and bifurcation crossings along a sweep; writes sweep.csv and crossings.csv."""
    with _guard():
        config = load_config(
            ctx,
            sweep={
                "param": param.value if param else None,
                "start": start,
                "stop": stop,
                "steps": steps,
                "mode": mode.value if mode else None,
                "transient": transient,
                "record": record,
            },
        )
        service = BifurcationService(config, ctx.obj.threads)
        with _progress() as progress:
            task = progress.add_task("Simulating orbit diagram...", total=None)
            result = service.orbit_diagram()
            progress.update(task, description="Tracking steady-state branches...")
            crossings = service.crossings()

        writer = get_writer(ctx)
        sweep_frame = service.sweep_frame(result)
        writer.save_table("sweep.csv", sweep_frame)
        writer.save_table("crossings.csv", service.crossings_frame(crossings))
        if ctx.obj.png:
            figure = orbit_diagram_figure(sweep_frame, config.sweep.param.value)
            save_png(figure, writer.path_for("sweep.png"))

    table = Table(title=f"Crossings along {config.sweep.param.value}")
    table.add_column("value", style="cyan")
    table.add_column("type")
    table.add_column("pi_bar")
    for crossing in crossings:
        pi_bar = "" if crossing.pi_bar is None else f"{crossing.pi_bar:.6g}"
        table.add_row(f"{crossing.param_value:.8g}", crossing.type.value, pi_bar)
    console.print(table)
    console.print(f"[green]✓[/green] Wrote sweep.csv and crossings.csv to {ctx.obj.out}")


@app.command()
def basin(
    ctx: typer.Context,
    resolution: Optional[int] = typer.Option(None, "--resolution", help="Cells per axis"),
    max_iter: Optional[int] = typer.Option(None, "--max-iter", help="Iteration cap per cell"),
    e_min: Optional[float] = typer.Option(None, "--e-min"),
    e_max: Optional[float] = typer.Option(None, "--e-max"),
    pi_min: Optional[float] = typer.Option(None, "--pi-min"),
    pi_max: Optional[float] = typer.Option(None, "--pi-max"),
):
    """Basins of attraction; writes basin_labels.csv and basin_summary.csv."""
    with _guard():
        config = load_config(
            ctx,
            basin={
                "resolution": resolution,
                "max_iter": max_iter,
                "e_min": e_min,
                "e_max": e_max,
                "pi_min": pi_min,
                "pi_max": pi_max,
            },
        )
        service = BasinService(config, ctx.obj.threads)
        with _progress() as progress:
            progress.add_task("Rasterizing basins...", total=None)
            grid = service.compute()

        writer = get_writer(ctx)
        writer.save_matrix("basin_labels.csv", grid.labels, service.header(grid))
        summary = service.summary(grid)
        writer.save_table("basin_summary.csv", summary)
        if ctx.obj.png:
            save_png(basin_figure(grid), writer.path_for("basin_labels.png"))

    if grid.trivial:
        console.print("[yellow]Fewer than two stable steady states; the basin picture is trivial[/yellow]")
    table = Table(title="Basins")
    for column in ("attractor", "label", "fraction", "components"):
        table.add_column(column, style="cyan" if column == "attractor" else None)
    for row in summary.itertuples(index=False):
        table.add_row(str(row.attractor), row.label, f"{row.fraction:.4f}", str(row.components))
    console.print(table)


@app.command("tax-check")
def tax_check(
    ctx: typer.Context,
    trials: Optional[int] = typer.Option(None, "--trials", help="Random states to test"),
    tau_max: Optional[float] = typer.Option(None, "--tau-max", help="Largest tax rate drawn"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Random seed"),
):
    """Check that a consumption tax leaves the law of motion unchanged."""
    with _guard():
        config = load_config(ctx, tax_check={"trials": trials, "tau_max": tau_max, "seed": seed})
        report = TaxCheckService(config).run()

    console.print(
        f"Max deviation {report.max_deviation:.3e} over {report.trials} trials "
        f"(worst at e={report.worst_state.e:.6g}, pi={report.worst_state.pi:.6g}, "
        f"tau={report.worst_tau:.6g})"
    )
    if not report.passed:
        console.print(f"[red]Error:[/red] deviation exceeds {report.tolerance:g}")
        raise typer.Exit(EXIT_CHECK_FAILED)
    console.print("[green]✓[/green] Tax-adjusted dynamics match the baseline")


@app.command()
def isoclines(
    ctx: typer.Context,
    e_min: Optional[float] = typer.Option(None, "--e-min"),
    e_max: Optional[float] = typer.Option(None, "--e-max"),
    points: Optional[int] = typer.Option(None, "--points", help="Samples per curve"),
):
    """Sample the steady-state isoclines; writes isoclines.csv."""
    with _guard():
        config = load_config(ctx, isoclines={"e_min": e_min, "e_max": e_max, "points": points})
        frame = IsoclineService(config).table()
        writer = get_writer(ctx)
        path = writer.save_table("isoclines.csv", frame)
        if ctx.obj.png:
            save_png(isocline_figure(frame), writer.path_for("isoclines.png"))

    console.print(f"[green]✓[/green] Wrote {len(frame)} isocline rows to {path}")


@app.command()
def presets():
    """List the named parameter sets."""
    table = Table(title="Presets")
    table.add_column("Name", style="cyan")
    table.add_column("Description")
    table.add_column("Parameters", style="dim")
    for name in preset_names():
        preset = PRESETS[name]
        params = ", ".join(f"{key}={value:g}" for key, value in preset["params"].items())
        table.add_row(name, preset["description"], params)
    console.print(table)


@app.command("show-config")
def show_config(ctx: typer.Context):
    """Print the resolved configuration as JSON."""
    with _guard():
        config = load_config(ctx)
    typer.echo(config.model_dump_json(indent=2))


if __name__ == "__main__":
    app()
