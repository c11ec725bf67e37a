"""MMD commands: mmd, witness and moments."""

from __future__ import annotations

from typing import Annotated, Any

import numpy as np
import typer

from pdo_mmd.cli.common import (
    DimOption,
    GridNOption,
    HalfWidthOption,
    OutOption,
    SymbolOption,
    console,
    load_run_config,
    output_dir,
    require_path,
    require_separable,
    resolve_symbol,
    run_command,
    write_json,
)
from pdo_mmd.cli.kernel import PadOption, resolve_kernel
from pdo_mmd.mmd import (
    MmdEstimate,
    SampleSet,
    mmd_density,
    mmd_gram,
    mmd_spectral,
    moment_field,
    read_samples,
    witness,
    write_moments,
)
from pdo_mmd.numgrid import Grid, read_grid_function, write_grid_function
from pdo_mmd.schemas import EstimatorMethod, RunConfig
from pdo_mmd.symbols import Symbol, canonicalize

XOption = Annotated[
    str | None, typer.Option("--x", help="Samples of u (density CSV for --method density)")
]
YOption = Annotated[
    str | None, typer.Option("--y", help="Samples of v (density CSV for --method density)")
]


def _sample_pair(cfg: RunConfig) -> tuple[SampleSet, SampleSet]:
    x_path = require_path(cfg.x, "--x")
    y_path = require_path(cfg.y, "--y")
    return read_samples(x_path), read_samples(y_path)


def estimate(cfg: RunConfig, sym: Symbol, grid: Grid) -> MmdEstimate:
    """Run the configured estimator on the configured inputs."""
    if cfg.method is EstimatorMethod.DENSITY:
        u = read_grid_function(require_path(cfg.x, "--x"))
        v = read_grid_function(require_path(cfg.y, "--y"))
        return mmd_density(u, v, sym, grid)

    su, sv = _sample_pair(cfg)
    if cfg.method is EstimatorMethod.GRAM:
        return mmd_gram(su, sv, resolve_kernel(sym, grid, cfg.pad), cfg.statistic)
    return mmd_spectral(su, sv, require_separable(sym, "the spectral estimator"), grid)


def mmd(
    ctx: typer.Context,
    x: XOption = None,
    y: YOption = None,
    method: Annotated[
        EstimatorMethod | None, typer.Option("--method", "-m", help="Estimator")
    ] = None,
    statistic: Annotated[
        str | None, typer.Option("--statistic", help="Gram statistic: v or u")
    ] = None,
    symbol: SymbolOption = None,
    out: OutOption = None,
    pad: PadOption = None,
    dim: DimOption = None,
    grid_n: GridNOption = None,
    half_width: HalfWidthOption = None,
) -> None:
    """MMD between two sample sets (or two gridded densities).

    Writes mmd.json.

    Examples:
        pdommd mmd --symbol gaussian.json --x a.csv --y b.csv --method gram
    """
    cfg = load_run_config(
        ctx,
        x=x,
        y=y,
        method=method,
        statistic=statistic,
        symbol=symbol,
        out=out,
        pad=pad,
        dim=dim,
        grid_n=grid_n,
        half_width=half_width,
    )

    def _mmd() -> dict[str, Any]:
        sym, grid = resolve_symbol(cfg)
        document = estimate(cfg, sym, grid).to_dict()
        write_json(output_dir(cfg) / "mmd.json", document)
        return document

    document = run_command(_mmd, error_prefix="MMD failed")
    console.print(f"MMD ({document['method']}) = [bold]{document['value']:.10g}[/bold]")
    for warning in document["warnings"]:
        console.print(f"[yellow]Warning:[/yellow] {warning}")


def witness_cmd(
    ctx: typer.Context,
    x: XOption = None,
    y: YOption = None,
    symbol: SymbolOption = None,
    out: OutOption = None,
    dim: DimOption = None,
    grid_n: GridNOption = None,
    half_width: HalfWidthOption = None,
) -> None:
    """Unit-norm witness on the feature grid and its critic gap on the samples.

    Writes witness.csv and witness.json.
    """
    cfg = load_run_config(
        ctx, x=x, y=y, symbol=symbol, out=out, dim=dim, grid_n=grid_n, half_width=half_width
    )

    def _witness() -> dict[str, Any]:
        sym, grid = resolve_symbol(cfg)
        su, sv = _sample_pair(cfg)
        result = witness(su, sv, require_separable(sym, "witness"), grid)
        target = output_dir(cfg)
        write_grid_function(result.function, target / "witness.csv")
        gap = float(
            np.mean(result.critic(su.points).real) - np.mean(result.critic(sv.points).real)
        )
        document = {
            "objective": result.objective,
            "critic_gap": gap,
            "grid": result.grid.describe(),
            "values_file": "witness.csv",
            "warnings": [w.value for w in result.warnings],
        }
        write_json(target / "witness.json", document)
        return document

    document = run_command(_witness, error_prefix="Witness failed")
    console.print(f"Witness objective = [bold]{document['objective']:.10g}[/bold]")


def moments_cmd(
    ctx: typer.Context,
    x: XOption = None,
    y: YOption = None,
    symbol: SymbolOption = None,
    out: OutOption = None,
    dim: DimOption = None,
    grid_n: GridNOption = None,
    half_width: HalfWidthOption = None,
) -> None:
    """Local-moment gaps of every canonical term on the data grid.

    Writes moment_<i>.csv and moments.json.
    """
    cfg = load_run_config(
        ctx, x=x, y=y, symbol=symbol, out=out, dim=dim, grid_n=grid_n, half_width=half_width
    )

    def _moments() -> dict[str, Any]:
        sym, grid = resolve_symbol(cfg)
        su, sv = _sample_pair(cfg)
        canon = canonicalize(require_separable(sym, "moments"), grid)
        return write_moments(moment_field(su, sv, canon, grid), output_dir(cfg))

    document = run_command(_moments, error_prefix="Moments failed")
    console.print(f"[green]{document['terms']} moment fields[/green] written")
