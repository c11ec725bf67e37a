"""Local moments m(t, u) = E[g*(x) | x + eps = t] with eps ~ p.

For a canonical symbol each term c_i h_i(x) g_i(y) has a noise density p_i,
and the MMD compares the local moments of c_i g_i under u and v pointwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import numpy.typing as npt

from pdo_mmd.config import get_settings
from pdo_mmd.exceptions import UnsupportedPoint
from pdo_mmd.mmd.samples import SampleSet
from pdo_mmd.numgrid import ComplexArray, FloatArray, Grid, GridFunction, default_grid
from pdo_mmd.numgrid.io import FLOAT_FORMAT, grid_function_header
from pdo_mmd.symbols import CanonicalSymbol, Factor, factor_values

Source = SampleSet | GridFunction


def _support(source: Source) -> tuple[FloatArray, FloatArray]:
    """Points and weights of the measure (samples or density quadrature)."""
    if isinstance(source, SampleSet):
        return source.points, np.full(source.size, 1.0 / source.size)
    weights = source.real * source.grid.cell_volume
    return source.grid.lattice(), weights


def _moments(
    targets: FloatArray,
    source: Source,
    g: Factor,
    p: GridFunction,
) -> tuple[ComplexArray, FloatArray]:
    points, weights = _support(source)
    features = np.conj(factor_values(g, points))
    numerator = np.zeros(len(targets), dtype=np.complex128)
    denominator = np.zeros(len(targets), dtype=np.float64)
    for k, t in enumerate(targets):
        noise = p.sample(t - points, method="linear", outside="zero").real * weights
        numerator[k] = np.dot(features, noise)
        denominator[k] = noise.sum()
    return numerator, denominator


def local_moment(
    t: npt.ArrayLike,
    source: Source,
    g: Factor,
    p: GridFunction,
    min_denominator: float | None = None,
) -> complex:
    """Conditional expectation of conj(g) at one point t.

    Args:
        t: Point in R^dim
        source: Samples of u, or a density of u on a grid
        g: Feature factor
        p: Noise density on the data grid (linear interpolation, 0 outside)
        min_denominator: Smallest admissible value of integral u(x) p(t - x) dx

    Raises:
        UnsupportedPoint: If t lies outside the effective support
        ValueError: If t is not a single point
        GridMismatch: If t does not match the dimension of p
    """
    floor = get_settings().tolerances.moment_denominator if min_denominator is None else (
        min_denominator
    )
    target = p.grid.as_points(t)
    if len(target) != 1:
        raise ValueError(f"local_moment takes one point, got {len(target)}")
    numerator, denominator = _moments(target, source, g, p)
    if denominator[0] < floor:
        raise UnsupportedPoint(
            f"Local moment undefined at {target[0].tolist()}", float(denominator[0])
        )
    return complex(numerator[0] / denominator[0])


@dataclass(frozen=True, eq=False)
class MomentField:
    """m_i(., u) - m_i(., v) on the data grid, with definedness masks."""

    grid: Grid
    fields: tuple[ComplexArray, ...] = field(repr=False)
    masks: tuple[npt.NDArray[np.bool_], ...] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.fields)

    def defined_fraction(self, index: int) -> float:
        return float(self.masks[index].mean())


def moment_field(
    su: SampleSet,
    sv: SampleSet,
    canon: CanonicalSymbol,
    grid: Grid | None = None,
    min_denominator: float | None = None,
) -> MomentField:
    """Per-term local-moment gaps of a canonical symbol.

    Term i uses p_i as noise density and conj(c_i g_i) as feature. Points
    where either denominator underflows are masked out and stored as 0.
    """
    floor = get_settings().tolerances.moment_denominator if min_denominator is None else (
        min_denominator
    )
    feature_grid = grid or default_grid(su.dim)
    data_grid = feature_grid.dual()
    targets = data_grid.lattice()

    fields: list[ComplexArray] = []
    masks: list[npt.NDArray[np.bool_]] = []
    for term, pdf in zip(canon.symbol.terms, canon.pdfs, strict=True):
        num_u, den_u = _moments(targets, su, term.g, pdf)
        num_v, den_v = _moments(targets, sv, term.g, pdf)
        mask = (den_u >= floor) & (den_v >= floor)
        gap = np.zeros(len(targets), dtype=np.complex128)
        gap[mask] = num_u[mask] / den_u[mask] - num_v[mask] / den_v[mask]
        fields.append(np.conj(term.coef) * gap)
        masks.append(mask)
    return MomentField(grid=data_grid, fields=tuple(fields), masks=tuple(masks))


def write_moments(result: MomentField, out_dir: Path) -> dict[str, Any]:
    """Write moment_<i>.csv (x1[,x2],re,im,defined) and moments.json."""
    out_dir.mkdir(parents=True, exist_ok=True)
    lattice = result.grid.lattice()
    header = grid_function_header(result.grid.dim) + ",defined"
    files = []
    for i, (values, mask) in enumerate(zip(result.fields, result.masks, strict=True)):
        table = np.column_stack([lattice, values.real, values.imag, mask.astype(np.float64)])
        path = out_dir / f"moment_{i}.csv"
        fmt = [FLOAT_FORMAT] * (lattice.shape[1] + 2) + ["%d"]
        np.savetxt(path, table, fmt=fmt, delimiter=",", header=header, comments="")
        files.append(path.name)

    document: dict[str, Any] = {
        "data_grid": result.grid.describe(),
        "terms": result.size,
        "files": files,
        "defined_fraction": [result.defined_fraction(i) for i in range(result.size)],
    }
    (out_dir / "moments.json").write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
    return document
