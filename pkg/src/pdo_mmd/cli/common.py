"""Common CLI option types and helpers.

This module centralizes reusable CLI options to reduce duplication
and consolidate noqa comments for Typer's required function call pattern.

It also provides:
- `run_command`: unified error handling (exit 1 on numerical or input failures)
- `load_run_config`: defaults <- config file <- flags, with unknown keys as usage errors
- symbol, grid and output-directory resolution shared by the commands
"""

from __future__ import annotations

import json
from collections.abc import Callable
from pathlib import Path
from typing import Annotated, Any, TypeVar

import click
import typer
from pydantic import ValidationError
from rich.console import Console

from pdo_mmd.config import get_settings
from pdo_mmd.logging import get_logger
from pdo_mmd.numgrid import Grid
from pdo_mmd.schemas import RunConfig
from pdo_mmd.symbols import SeparableSymbol, Symbol, parse_symbol

# Shared console instances: results on stdout, diagnostics on stderr
console = Console()
err_console = Console(stderr=True)

logger = get_logger(__name__)

T = TypeVar("T")


def run_command(fn: Callable[[], T], *, error_prefix: str = "Error") -> T:
    """Run a command body with unified error handling.

    Usage errors propagate (exit 2); any other failure prints a red
    diagnostic and exits with code 1.

    Raises:
        typer.Exit: Re-raised from deliberate exits, or raised with code 1 on error
    """
    try:
        return fn()
    except (typer.Exit, click.UsageError):
        raise
    except Exception as e:
        err_console.print(f"[red]{error_prefix}:[/red] {e}")
        raise typer.Exit(1) from None


# -----------------------------------------------------------------------------
# Config layering
# -----------------------------------------------------------------------------


def _validation_message(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        key = ".".join(str(p) for p in item["loc"]) or "config"
        if item["type"] == "extra_forbidden":
            parts.append(f"unknown config key '{key}'")
        else:
            parts.append(f"{key}: {item['msg']}")
    return "; ".join(parts)


def read_config_file(path: Path | None) -> dict[str, Any]:
    """Decoded JSON config file, or an empty dict.

    Raises:
        click.UsageError: If the file is missing, not JSON or not an object
    """
    if path is None:
        return {}
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise click.UsageError(f"Cannot read config file {path}: {e}") from None
    if not isinstance(data, dict):
        raise click.UsageError(f"Config file {path} must contain a JSON object")
    return data


def load_run_config(
    ctx: typer.Context, command_config: Path | None = None, **flags: Any
) -> RunConfig:
    """Layer flags over the command config over the global --config file over defaults.

    Flags left at None do not override. Tolerance overrides are applied to the
    process settings.

    Raises:
        click.UsageError: For unknown keys or invalid values (exit 2)
    """
    obj = ctx.obj if isinstance(ctx.obj, dict) else {}
    data = read_config_file(obj.get("config"))
    data.update(read_config_file(command_config))
    data.update({k: v for k, v in flags.items() if v is not None})
    try:
        cfg = RunConfig.model_validate(data)
    except ValidationError as e:
        raise click.UsageError(_validation_message(e)) from None

    if cfg.tolerances:
        settings = get_settings()
        settings.tolerances = settings.tolerances.model_copy(update=cfg.tolerances)
    logger.info(
        "Command {} with seed {} and config {}", ctx.command_path, cfg.seed, cfg.log_dict()
    )
    return cfg


# -----------------------------------------------------------------------------
# Resolution helpers
# -----------------------------------------------------------------------------


def output_dir(cfg: RunConfig) -> Path:
    """Output directory, created if missing."""
    path = Path(cfg.out or get_settings().output_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _grid_override(cfg: RunConfig, base: dict[str, Any] | None) -> dict[str, Any] | None:
    if cfg.dim is None and cfg.grid_n is None and cfg.half_width is None:
        return base
    settings_dim, settings_n, settings_hw = get_settings().grid.resolve(
        cfg.dim if cfg.dim is not None else (base or {}).get("dim")
    )
    current = dict(base or {"dim": settings_dim, "n": settings_n, "half_width": settings_hw})
    if cfg.dim is not None:
        current["dim"] = cfg.dim
    if cfg.grid_n is not None:
        current["n"] = cfg.grid_n
    if cfg.half_width is not None:
        current["half_width"] = cfg.half_width
    return current


def resolve_symbol(cfg: RunConfig) -> tuple[Symbol, Grid]:
    """Symbol and feature grid from the config's symbol file or inline document.

    Grid flags override the grid stored in the document.

    Raises:
        click.UsageError: If no symbol was given
        OSError / ValueError: If the symbol file cannot be read or parsed
    """
    source = cfg.symbol_source
    if source is None:
        raise click.UsageError("A symbol is required (--symbol FILE or 'symbol' in the config)")
    base_dir: Path | None = None
    if isinstance(source, str):
        path = Path(source)
        data = json.loads(path.read_text(encoding="utf-8"))
        base_dir = path.parent
    else:
        data = dict(source)
    if isinstance(data, dict):
        grid = _grid_override(cfg, data.get("grid"))
        if grid is not None:
            data["grid"] = grid
    return parse_symbol(data, base_dir=base_dir)


def require_separable(sym: Symbol, what: str) -> SeparableSymbol:
    """The symbol itself, if separable.

    Raises:
        ValueError: For a dense symbol
    """
    if not isinstance(sym, SeparableSymbol):
        raise ValueError(f"{what} needs a separable symbol; truncate a dense symbol first")
    return sym


def require_path(value: str | None, flag: str) -> Path:
    """Path given by an input flag.

    Raises:
        click.UsageError: If the flag is missing
    """
    if value is None:
        raise click.UsageError(f"Missing required input {flag}")
    return Path(value)


def write_json(path: Path, document: dict[str, Any]) -> Path:
    """Write a JSON artifact (shortest round-trip floats, trailing newline)."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
    return path


# Typer requires function calls as default arguments, which triggers B008.
# Using Annotated with a centralized type alias keeps the noqa in one place.

OutOption = Annotated[
    str | None,
    typer.Option("--out", "-o", help="Output directory (default: ./pdommd-out)"),
]
"""Output directory option.

Usage:
    def command(out: OutOption = None):
"""

SeedOption = Annotated[int | None, typer.Option("--seed", help="Random seed (default 0)")]

DimOption = Annotated[int | None, typer.Option("--dim", help="Grid dimension (1 or 2)")]

GridNOption = Annotated[
    int | None, typer.Option("--grid-n", help="Points per axis of the feature grid")
]

HalfWidthOption = Annotated[
    float | None, typer.Option("--half-width", help="Half width of the feature grid")
]

SymbolOption = Annotated[
    str | None, typer.Option("--symbol", "-s", help="Symbol JSON file")
]
"""Symbol file option.

Usage:
    def command(symbol: SymbolOption = None):
"""


def complex_pair(value: complex) -> list[float]:
    """[re, im] for JSON documents."""
    c = complex(value)
    return [c.real, c.imag]
