"""Kernel commands: Gram matrices at points and the kernel on the data grid."""

from __future__ import annotations

from pathlib import Path
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
    resolve_symbol,
    run_command,
    write_json,
)
from pdo_mmd.exceptions import TransformUnavailable
from pdo_mmd.kernels import (
    ClosedKernel,
    GramMatrix,
    KernelForm,
    gram,
    kernel_closed,
    kernel_grid,
    psd_check,
    write_kernel_grid,
)
from pdo_mmd.logging import get_logger
from pdo_mmd.mmd import read_samples
from pdo_mmd.numgrid import Grid
from pdo_mmd.numgrid.io import FLOAT_FORMAT
from pdo_mmd.symbols import SeparableSymbol, Symbol

logger = get_logger(__name__)

app = typer.Typer(help="Evaluate PDO kernels")

PadOption = Annotated[
    int | None, typer.Option("--pad", help="Zero-padding factor of grid pair transforms")
]


def resolve_kernel(sym: Symbol, grid: Grid, pad: int) -> KernelForm:
    """Closed kernel when every pair transform exists, else the data-grid kernel."""
    if isinstance(sym, SeparableSymbol):
        try:
            return kernel_closed(sym, grid, pad)
        except TransformUnavailable as e:
            logger.warning("Closed kernel unavailable ({}); using the grid kernel", e)
    return kernel_grid(sym, grid)


def write_gram(matrix: GramMatrix, csv_path: Path) -> None:
    """Write ``a,b,re,im`` rows of a Gram matrix."""
    rows, cols = np.indices(matrix.entries.shape)
    table = np.column_stack(
        [rows.ravel(), cols.ravel(), matrix.entries.real.ravel(), matrix.entries.imag.ravel()]
    )
    np.savetxt(
        csv_path,
        table,
        fmt=["%d", "%d", FLOAT_FORMAT, FLOAT_FORMAT],
        delimiter=",",
        header="a,b,re,im",
        comments="",
    )


@app.command("eval")
def eval_cmd(
    ctx: typer.Context,
    points: Annotated[
        str | None, typer.Option("--points", "-p", help="Point CSV (x1[,x2])")
    ] = None,
    symbol: SymbolOption = None,
    out: OutOption = None,
    pad: PadOption = None,
    dim: DimOption = None,
    grid_n: GridNOption = None,
    half_width: HalfWidthOption = None,
) -> None:
    """Gram matrix of the kernel at a point set, with its PSD check.

    Writes gram.csv and gram.json.

    Examples:
        pdommd kernel eval --symbol gaussian.json --points points.csv
    """
    cfg = load_run_config(
        ctx,
        points=points,
        symbol=symbol,
        out=out,
        pad=pad,
        dim=dim,
        grid_n=grid_n,
        half_width=half_width,
    )
    points_path = require_path(cfg.points, "--points")

    def _eval() -> dict[str, Any]:
        sym, grid = resolve_symbol(cfg)
        kernel = resolve_kernel(sym, grid, cfg.pad)
        matrix = gram(kernel, read_samples(points_path).points)
        report = psd_check(matrix)
        target = output_dir(cfg)
        write_gram(matrix, target / "gram.csv")
        document = {
            "size": matrix.size,
            "form": "closed" if isinstance(kernel, ClosedKernel) else "grid",
            "psd": report.to_dict(),
            "values_file": "gram.csv",
        }
        write_json(target / "gram.json", document)
        return document

    document = run_command(_eval, error_prefix="Kernel evaluation failed")
    psd = document["psd"]
    status = "[green]PSD[/green]" if psd["pass"] else "[red]not PSD[/red]"
    console.print(f"{document['size']} points: {status} (min eigenvalue {psd['min_eig']:.3g})")


@app.command("grid")
def grid_cmd(
    ctx: typer.Context,
    symbol: SymbolOption = None,
    out: OutOption = None,
    dim: DimOption = None,
    grid_n: GridNOption = None,
    half_width: HalfWidthOption = None,
) -> None:
    """Kernel matrix on the data grid.

    Writes kernel_grid.csv and kernel_grid.json.
    """
    cfg = load_run_config(
        ctx, symbol=symbol, out=out, dim=dim, grid_n=grid_n, half_width=half_width
    )

    def _grid() -> Path:
        sym, grid = resolve_symbol(cfg)
        return write_kernel_grid(kernel_grid(sym, grid), output_dir(cfg) / "kernel_grid.csv")

    meta_path = run_command(_grid, error_prefix="Kernel grid failed")
    console.print(f"[green]Wrote[/green] {meta_path}")
