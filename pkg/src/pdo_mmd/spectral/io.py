"""Export of singular expansions."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from pdo_mmd.numgrid import write_grid_function
from pdo_mmd.numgrid.io import FLOAT_FORMAT
from pdo_mmd.spectral.svd import SvdResult, numerical_rank


def format_row(values: Any) -> str:
    """One comma-separated row in the shared 17-significant-digit format."""
    return ",".join(FLOAT_FORMAT % float(v) for v in values)


def write_svd(svd: SvdResult, out_dir: Path, functions: int) -> dict[str, Any]:
    """Write sigmas.csv, the leading singular functions and svd_manifest.json.

    Args:
        svd: Decomposition to export
        out_dir: Target directory (created if missing)
        functions: Number of left/right singular function pairs to write

    Returns:
        The manifest document
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "sigmas.csv").write_text(format_row(svd.sigmas) + "\n", encoding="utf-8")

    count = min(functions, svd.count)
    left_files, right_files = [], []
    for i in range(count):
        left = write_grid_function(svd.left_function(i), out_dir / f"left_{i}.csv")
        right = write_grid_function(svd.right_function(i), out_dir / f"right_{i}.csv")
        left_files.append(left.name)
        right_files.append(right.name)

    manifest: dict[str, Any] = {
        "count": svd.count,
        "numerical_rank": numerical_rank(svd),
        "grid": svd.grid_x.describe(),
        "data_grid": svd.grid_y.describe(),
        "sigmas": [float(s) for s in svd.sigmas],
        "left": left_files,
        "right": right_files,
    }
    (out_dir / "svd_manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )
    return manifest
