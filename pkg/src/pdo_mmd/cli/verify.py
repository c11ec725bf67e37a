"""verify command: randomized checks of the operator bounds and identities."""

from __future__ import annotations

from typing import Annotated

import click
import typer
from rich.table import Table

from pdo_mmd.cli.common import (
    DimOption,
    GridNOption,
    HalfWidthOption,
    OutOption,
    SeedOption,
    console,
    err_console,
    load_run_config,
    output_dir,
    run_command,
)
from pdo_mmd.exceptions import SpecError
from pdo_mmd.harness import CheckReport, InstanceSpec, run_check, write_reports
from pdo_mmd.schemas import CheckId

ALL_CHECKS = "all"


def _checks(name: str) -> list[CheckId]:
    if name == ALL_CHECKS:
        return list(CheckId)
    try:
        return [CheckId(name)]
    except ValueError:
        choices = ", ".join([c.value for c in CheckId] + [ALL_CHECKS])
        raise click.UsageError(f"Unknown check '{name}' (choose from {choices})") from None


def _table(reports: list[CheckReport]) -> Table:
    table = Table(title="Verification")
    table.add_column("Check")
    table.add_column("Trials", justify="right")
    table.add_column("Violations", justify="right")
    table.add_column("Errors", justify="right")
    table.add_column("Worst margin", justify="right")
    for report in reports:
        margin = report.worst_margin
        table.add_row(
            report.check.value,
            str(report.trials),
            str(report.violations),
            str(report.errors),
            "-" if margin is None else f"{margin:.3g}",
        )
    return table


def verify(
    ctx: typer.Context,
    check: Annotated[str, typer.Argument(help="Check id, or 'all'")],
    trials: Annotated[int | None, typer.Option("--trials", "-n", help="Trials per check")] = None,
    seed: SeedOption = None,
    out: OutOption = None,
    dim: DimOption = None,
    grid_n: GridNOption = None,
    half_width: HalfWidthOption = None,
) -> None:
    """Run seeded trials of a check and write report_<check>.json and summary.json.

    Exits with code 1 when any trial violates the check or fails numerically.

    Examples:
        pdommd verify trunc_hs --trials 100 --seed 1
        pdommd verify all --trials 10
    """
    checks = _checks(check)
    cfg = load_run_config(
        ctx,
        check=checks[0].value if len(checks) == 1 else None,
        trials=trials,
        seed=seed,
        out=out,
    )
    overrides = {"dim": dim, "grid_n": grid_n, "half_width": half_width}
    instance = {**cfg.instance, **{k: v for k, v in overrides.items() if v is not None}}
    try:
        spec = InstanceSpec.parse(instance) if instance else None
    except SpecError as e:
        raise click.UsageError(str(e)) from None

    def _verify() -> list[CheckReport]:
        reports = [run_check(c, cfg.trials, cfg.seed, spec) for c in checks]
        write_reports(reports, output_dir(cfg))
        return reports

    reports = run_command(_verify, error_prefix="Verification failed")
    console.print(_table(reports))
    if any(r.failed for r in reports):
        err_console.print("[red]Verification recorded violations or errors[/red]")
        raise typer.Exit(1)
