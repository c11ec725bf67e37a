"""Spectral commands: svd and truncate."""

from __future__ import annotations

from typing import Annotated, Any

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
    resolve_symbol,
    run_command,
    write_json,
)
from pdo_mmd.spectral import (
    c_f_constant,
    numerical_rank,
    nystrom_svd,
    retained_variance,
    tail_sum,
    truncate,
    write_svd,
)
from pdo_mmd.symbols import dump_symbol


def svd(
    ctx: typer.Context,
    symbol: SymbolOption = None,
    out: OutOption = None,
    dim: DimOption = None,
    grid_n: GridNOption = None,
    half_width: HalfWidthOption = None,
    functions: Annotated[
        int | None, typer.Option("--functions", help="Singular function pairs to write")
    ] = None,
) -> None:
    """Nystrom SVD of a symbol.

    Writes sigmas.csv (one row), svd_manifest.json and left_<i>.csv /
    right_<i>.csv for the leading singular functions.

    Examples:
        pdommd svd --symbol gaussian.json --functions 2
    """
    cfg = load_run_config(
        ctx,
        symbol=symbol,
        out=out,
        dim=dim,
        grid_n=grid_n,
        half_width=half_width,
        functions=functions,
    )

    def _svd() -> dict[str, Any]:
        sym, grid = resolve_symbol(cfg)
        result = nystrom_svd(sym, grid)
        target = output_dir(cfg)
        manifest = write_svd(result, target, cfg.functions)
        rank = manifest["numerical_rank"]
        profile = c_f_constant(result, rank)
        manifest["c_f"] = {"constant": profile.constant, "ratios": list(profile.ratios)}
        manifest["tail_sums"] = [tail_sum(result, r) for r in range(rank + 1)]
        write_json(target / "svd_manifest.json", manifest)
        return manifest

    manifest = run_command(_svd, error_prefix="SVD failed")
    console.print(
        f"[green]{manifest['count']} singular values[/green], "
        f"numerical rank {manifest['numerical_rank']}"
    )


def truncate_cmd(
    ctx: typer.Context,
    rank: Annotated[int | None, typer.Option("--rank", "-r", help="Truncation rank")] = None,
    symbol: SymbolOption = None,
    out: OutOption = None,
    dim: DimOption = None,
    grid_n: GridNOption = None,
    half_width: HalfWidthOption = None,
) -> None:
    """Rank-r truncation of a symbol's singular expansion.

    Writes symbol.json (dense) with its values CSV.
    """
    cfg = load_run_config(
        ctx, rank=rank, symbol=symbol, out=out, dim=dim, grid_n=grid_n, half_width=half_width
    )
    if cfg.rank is None:
        raise typer.BadParameter("--rank is required", param_hint="--rank")

    def _truncate() -> dict[str, Any]:
        sym, grid = resolve_symbol(cfg)
        result = nystrom_svd(sym, grid)
        truncated = truncate(result, cfg.rank)  # type: ignore[arg-type]
        target = output_dir(cfg)
        dump_symbol(truncated, target / "symbol.json", grid)
        return {
            "rank": cfg.rank,
            "numerical_rank": numerical_rank(result),
            "retained_variance": retained_variance(result, cfg.rank),  # type: ignore[arg-type]
        }

    info = run_command(_truncate, error_prefix="Truncation failed")
    console.print(
        f"[green]Rank {info['rank']}[/green] keeps "
        f"{info['retained_variance']:.6f} of the squared singular mass"
    )
