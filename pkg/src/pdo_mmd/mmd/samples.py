"""Sample sets and their CSV files."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import numpy.typing as npt

from pdo_mmd.numgrid import FloatArray
from pdo_mmd.numgrid.io import FLOAT_FORMAT


@dataclass(frozen=True, eq=False)
class SampleSet:
    """N points in R^dim, optionally tagged with the seed that drew them."""

    points: FloatArray = field(repr=False)
    seed: int | None = None

    def __post_init__(self) -> None:
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise ValueError("A sample set needs at least one point")
        if not np.all(np.isfinite(pts)):
            raise ValueError("Sample coordinates must be finite")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    @property
    def size(self) -> int:
        return int(self.points.shape[0])

    @property
    def radius(self) -> float:
        """Largest Euclidean norm of a sample."""
        return float(np.sqrt(np.sum(self.points**2, axis=1)).max())

    @classmethod
    def normal(
        cls,
        n: int,
        mean: npt.ArrayLike = 0.0,
        std: float = 1.0,
        seed: int = 0,
        dim: int = 1,
    ) -> SampleSet:
        """Draw n isotropic Gaussian samples with a seeded generator."""
        rng = np.random.default_rng(seed)
        points = np.asarray(mean, dtype=np.float64) + std * rng.standard_normal((n, dim))
        return cls(points, seed=seed)


def write_samples(samples: SampleSet, path: Path) -> Path:
    """Write one row per sample with an ``x1[,x2]`` header."""
    path.parent.mkdir(parents=True, exist_ok=True)
    header = ",".join(f"x{axis + 1}" for axis in range(samples.dim))
    np.savetxt(path, samples.points, fmt=FLOAT_FORMAT, delimiter=",", header=header, comments="")
    return path


def read_samples(path: Path) -> SampleSet:
    """Read a sample CSV; a non-numeric first row is treated as a header.

    Raises:
        ValueError: If the file has no numeric rows
    """
    with path.open(encoding="utf-8") as handle:
        first = handle.readline().strip()
    try:
        [float(v) for v in first.split(",")]
        skip = 0
    except ValueError:
        skip = 1
    table = np.loadtxt(path, delimiter=",", skiprows=skip, ndmin=2)
    if table.size == 0:
        raise ValueError(f"{path} contains no samples")
    return SampleSet(table)
