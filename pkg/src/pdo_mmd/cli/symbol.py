"""Symbol commands: build (densify + summary) and canonicalize."""

from __future__ import annotations

from typing import Any

import numpy as np
import typer

from pdo_mmd.cli.common import (
    DimOption,
    GridNOption,
    HalfWidthOption,
    OutOption,
    SymbolOption,
    complex_pair,
    console,
    load_run_config,
    output_dir,
    resolve_symbol,
    run_command,
    write_json,
)
from pdo_mmd.numgrid import NormKind, norm, write_grid_function
from pdo_mmd.spectral import OperatorKind, build_operator, hs_norm
from pdo_mmd.symbols import (
    SeparableSymbol,
    canonicalize,
    densify,
    dump_symbol,
    feature_dimension,
)

app = typer.Typer(help="Build and transform symbols")


@app.command("build")
def build(
    ctx: typer.Context,
    symbol: SymbolOption = None,
    out: OutOption = None,
    dim: DimOption = None,
    grid_n: GridNOption = None,
    half_width: HalfWidthOption = None,
) -> None:
    """Densify a symbol on its grid pair and summarize it.

    Writes symbol_summary.json, symbol_values.csv and symbol.json (dense).

    Examples:
        pdommd symbol build --symbol gaussian.json --out out/
    """
    cfg = load_run_config(
        ctx, symbol=symbol, out=out, dim=dim, grid_n=grid_n, half_width=half_width
    )

    def _build() -> dict[str, Any]:
        sym, grid = resolve_symbol(cfg)
        target = output_dir(cfg)
        dense = densify(sym, grid, grid.dual())
        separable = isinstance(sym, SeparableSymbol)
        summary: dict[str, Any] = {
            "type": "separable" if separable else "dense",
            "rank": sym.rank if separable else None,
            "feature_dimension": feature_dimension(sym, grid.dual()) if separable else None,
            "grid": grid.describe(),
            "data_grid": grid.dual().describe(),
            "sup": float(np.abs(dense.values).max(initial=0.0)),
            "hs_norm": hs_norm(build_operator(dense, OperatorKind.INTEGRAL_OF, grid)),
        }
        dump_symbol(dense, target / "symbol.json", grid)
        write_json(target / "symbol_summary.json", summary)
        return summary

    summary = run_command(_build, error_prefix="Symbol build failed")
    console.print_json(data=summary)


@app.command("canonicalize")
def canonicalize_cmd(
    ctx: typer.Context,
    symbol: SymbolOption = None,
    out: OutOption = None,
    dim: DimOption = None,
    grid_n: GridNOption = None,
    half_width: HalfWidthOption = None,
) -> None:
    """Rewrite a separable symbol into pdf-transform terms.

    Writes canonical.json and one pdf_<i>.csv per canonical term.
    """
    cfg = load_run_config(
        ctx, symbol=symbol, out=out, dim=dim, grid_n=grid_n, half_width=half_width
    )

    def _canonicalize() -> dict[str, Any]:
        sym, grid = resolve_symbol(cfg)
        if not isinstance(sym, SeparableSymbol):
            raise ValueError("canonicalize needs a separable symbol")
        target = output_dir(cfg)
        canon = canonicalize(sym, grid)
        files = [
            write_grid_function(pdf, target / f"pdf_{i}.csv").name
            for i, pdf in enumerate(canon.pdfs)
        ]
        document = {
            "source_rank": canon.source_rank,
            "terms": canon.size,
            "grid": grid.describe(),
            "data_grid": grid.dual().describe(),
            "coefficients": [complex_pair(t.coef) for t in canon.symbol.terms],
            "masses": list(canon.masses),
            "pdf_l1": [norm(p, NormKind.L1) for p in canon.pdfs],
            "pdfs": files,
        }
        write_json(target / "canonical.json", document)
        return document

    document = run_command(_canonicalize, error_prefix="Canonicalization failed")
    terms, rank = document["terms"], document["source_rank"]
    console.print(f"[green]{terms} canonical terms[/green] from rank {rank}")
