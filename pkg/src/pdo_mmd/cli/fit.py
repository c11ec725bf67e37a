"""fit command: minimum-MMD estimation of a parametric sampler."""

from __future__ import annotations

from pathlib import Path
from typing import Annotated, Any

import typer

from pdo_mmd.cli.common import (
    DimOption,
    GridNOption,
    HalfWidthOption,
    OutOption,
    SeedOption,
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
from pdo_mmd.cli.mmd import XOption
from pdo_mmd.fit import ParametricModel, fit_mmd
from pdo_mmd.mmd import read_samples
from pdo_mmd.schemas import ModelFamily, OptimizerKind


def fit(
    ctx: typer.Context,
    fit_config: Annotated[
        Path | None, typer.Option("--fit-config", help="Fit config JSON (RunConfig keys)")
    ] = None,
    x: XOption = None,
    family: Annotated[
        ModelFamily | None, typer.Option("--family", help="Model family")
    ] = None,
    optimizer: Annotated[
        OptimizerKind | None, typer.Option("--optimizer", help="Optimizer")
    ] = None,
    budget: Annotated[
        int | None, typer.Option("--budget", help="Objective evaluation budget (>= 50)")
    ] = None,
    noise_size: Annotated[
        int | None, typer.Option("--noise-size", help="Base noise draws per evaluation")
    ] = None,
    symbol: SymbolOption = None,
    seed: SeedOption = None,
    out: OutOption = None,
    dim: DimOption = None,
    grid_n: GridNOption = None,
    half_width: HalfWidthOption = None,
) -> None:
    """Fit model parameters to the samples in --x by minimizing the MMD.

    Writes fit_result.json. An exhausted budget is reported in the result,
    not as a failure.

    Examples:
        pdommd fit --symbol gaussian.json --x data.csv --budget 500
        pdommd fit --fit-config fit.json
    """
    cfg = load_run_config(
        ctx,
        command_config=fit_config,
        x=x,
        family=family,
        optimizer=optimizer,
        budget=budget,
        noise_size=noise_size,
        symbol=symbol,
        seed=seed,
        out=out,
        dim=dim,
        grid_n=grid_n,
        half_width=half_width,
    )
    data_path = require_path(cfg.x, "--x")

    def _fit() -> dict[str, Any]:
        data = read_samples(data_path)
        sym, grid = resolve_symbol(cfg)
        model = ParametricModel.create(
            cfg.family, dim=data.dim, noise_size=cfg.noise_size, seed=cfg.seed, init=cfg.init
        )
        result = fit_mmd(
            data, model, require_separable(sym, "fit"), cfg.optimizer, cfg.budget, grid
        )
        document = result.to_dict()
        write_json(output_dir(cfg) / "fit_result.json", document)
        return document

    document = run_command(_fit, error_prefix="Fit failed")
    params = ", ".join(f"{k}={v:.6g}" for k, v in document["params"].items())
    console.print(
        f"[green]{document['stop_reason']}[/green] after {document['evaluations']} "
        f"evaluations: {params}"
    )
