"""Main CLI application for PDO-MMD."""

from pathlib import Path
from typing import Annotated

import click
import typer
from rich.console import Console

from pdo_mmd import __version__
from pdo_mmd.cli import fit as fit_cmd
from pdo_mmd.cli import kernel as kernel_cmd
from pdo_mmd.cli import mmd as mmd_cmd
from pdo_mmd.cli import spectral as spectral_cmd
from pdo_mmd.cli import symbol as symbol_cmd
from pdo_mmd.cli import verify as verify_cmd
from pdo_mmd.config import get_settings
from pdo_mmd.logging import setup_logging

app = typer.Typer(
    name="pdommd",
    help="Mercer kernels from pseudo-differential operator symbols, and MMD tooling.",
    add_completion=False,
)
console = Console()


def version_callback(value: bool) -> None:
    """Print version and exit."""
    if value:
        console.print(f"pdommd version {__version__}")
        raise typer.Exit()


@app.callback(invoke_without_command=True)
def main(
    ctx: typer.Context,
    version: Annotated[
        bool,
        typer.Option(
            "--version",
            help="Show version and exit.",
            callback=version_callback,
            is_eager=True,
        ),
    ] = False,
    verbose: Annotated[
        bool,
        typer.Option(
            "--verbose",
            "-v",
            help="Enable debug logging.",
        ),
    ] = False,
    quiet: Annotated[
        bool,
        typer.Option(
            "--quiet",
            "-q",
            help="Suppress non-error output (WARNING level).",
        ),
    ] = False,
    config: Annotated[
        Path | None,
        typer.Option(
            "--config",
            help="JSON run config; command flags override its values.",
        ),
    ] = None,
) -> None:
    """PDO-MMD - build PDO symbols, kernels and MMD estimates."""
    if ctx.invoked_subcommand is None:
        commands = ", ".join(sorted(ctx.command.list_commands(ctx)))  # type: ignore[attr-defined]
        raise click.UsageError(f"Missing command. Available commands: {commands}")

    settings = get_settings()
    log_config = settings.logging

    # Setup logging with CLI overrides
    setup_logging(
        level=settings.log_level,
        verbose=verbose,
        quiet=quiet,
        log_file=Path(log_config.log_file) if log_config.log_file else None,
        rotation=log_config.rotation,
        retention=log_config.retention,
        serialize=log_config.serialize,
    )
    ctx.obj = {"config": config}


# Register commands
app.command("svd")(spectral_cmd.svd)
app.command("truncate")(spectral_cmd.truncate_cmd)
app.command("mmd")(mmd_cmd.mmd)
app.command("witness")(mmd_cmd.witness_cmd)
app.command("moments")(mmd_cmd.moments_cmd)
app.command("verify")(verify_cmd.verify)
app.command("fit")(fit_cmd.fit)

# Register subcommands
app.add_typer(symbol_cmd.app, name="symbol")
app.add_typer(kernel_cmd.app, name="kernel")


if __name__ == "__main__":
    app()
