"""JSON symbol files.

A symbol file is a JSON object discriminated by ``type``:

- ``separable``: inline analytic terms ``[{f, g, coef}]``
- ``dense``: feature grid plus a CSV of entries (row index, column index, re, im)
- ``translation_invariant``: analytic kernel profile k on the data grid, or a
  ``laplace``, ``rational_quadratic`` or ``matern`` profile built in closed form
- ``universality``: width ``eps`` and polynomials ``polys``
- ``gaussian_envelope``: widths, coupling and optional polynomial

Every type accepts an optional ``grid`` (the feature grid); the settings
default is used when it is absent. Relative ``values_file`` paths resolve
against the directory of the JSON file.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Annotated, Literal

import numpy as np
from pydantic import Field, TypeAdapter

from pdo_mmd.exceptions import GridMismatch
from pdo_mmd.numgrid import Grid, GridFunction, default_grid, make_grid
from pdo_mmd.numgrid.io import FLOAT_FORMAT
from pdo_mmd.schemas.base import ComplexValue, SchemaBase
from pdo_mmd.symbols.construct import (
    from_kernel_profile,
    from_translation_invariant,
    gaussian_envelope_symbol,
    universality_symbol,
)
from pdo_mmd.symbols.separable import (
    DenseSymbol,
    SeparableSymbol,
    SeparableTerm,
    Symbol,
    densify,
)
from pdo_mmd.symbols.profiles import LaplaceProfile, MaternProfile, RationalQuadraticProfile
from pdo_mmd.symbols.terms import AnalyticFactorModel, AnalyticTerm, Polynomial


class GridSpec(SchemaBase):
    """Feature grid description."""

    dim: Literal[1, 2] = 1
    n: int = Field(ge=8, description="Points per axis (power of two)")
    half_width: float | list[float] = Field(description="Half width of the box")

    def build(self) -> Grid:
        return make_grid(self.dim, self.n, self.half_width)

    @classmethod
    def from_grid(cls, grid: Grid) -> GridSpec:
        return cls.model_validate(grid.describe())


class TermSpec(SchemaBase):
    f: AnalyticTerm
    g: AnalyticTerm
    coef: ComplexValue = 1.0


class SeparableSymbolFile(SchemaBase):
    type: Literal["separable"]
    terms: list[TermSpec] = Field(default_factory=list)
    grid: GridSpec | None = None


class DenseSymbolFile(SchemaBase):
    type: Literal["dense"]
    grid: GridSpec
    values_file: str


ProfileSpec = Annotated[
    AnalyticFactorModel | LaplaceProfile | RationalQuadraticProfile | MaternProfile,
    Field(discriminator="kind"),
]


class TranslationInvariantFile(SchemaBase):
    """k as an analytic function sampled on the data grid, or a closed-form kernel profile."""

    type: Literal["translation_invariant"]
    profile: ProfileSpec
    grid: GridSpec | None = None


class UniversalityFile(SchemaBase):
    type: Literal["universality"]
    eps: float = Field(gt=0.0)
    polys: list[Polynomial] = Field(min_length=1)
    grid: GridSpec | None = None


class GaussianEnvelopeFile(SchemaBase):
    type: Literal["gaussian_envelope"]
    eps_x: float = Field(gt=0.0)
    eps_y: float = Field(gt=0.0)
    coupling: float = 0.0
    poly: Polynomial | None = None
    grid: GridSpec | None = None


SymbolFile = Annotated[
    SeparableSymbolFile
    | DenseSymbolFile
    | TranslationInvariantFile
    | UniversalityFile
    | GaussianEnvelopeFile,
    Field(discriminator="type"),
]

_SymbolFileAdapter: TypeAdapter[
    SeparableSymbolFile
    | DenseSymbolFile
    | TranslationInvariantFile
    | UniversalityFile
    | GaussianEnvelopeFile
] = TypeAdapter(SymbolFile)


# -----------------------------------------------------------------------------
# Dense values CSV
# -----------------------------------------------------------------------------
def write_dense_values(sym: DenseSymbol, path: Path) -> Path:
    """Write entries as rows ``i,j,re,im``."""
    rows, cols = np.indices(sym.values.shape)
    table = np.column_stack(
        [rows.ravel(), cols.ravel(), sym.values.real.ravel(), sym.values.imag.ravel()]
    )
    np.savetxt(
        path,
        table,
        fmt=["%d", "%d", FLOAT_FORMAT, FLOAT_FORMAT],
        delimiter=",",
        header="i,j,re,im",
        comments="",
    )
    return path


def read_dense_values(path: Path, grid_x: Grid, grid_y: Grid) -> DenseSymbol:
    """Read a values CSV written by write_dense_values.

    Raises:
        GridMismatch: If the indices do not cover the grid pair exactly once
    """
    table = np.atleast_2d(np.loadtxt(path, delimiter=",", skiprows=1, dtype=np.float64))
    shape = (grid_x.size, grid_y.size)
    if table.shape != (shape[0] * shape[1], 4):
        raise GridMismatch(f"{path} has {table.shape[0]} rows, grids need {shape[0] * shape[1]}")
    rows = table[:, 0].astype(np.intp)
    cols = table[:, 1].astype(np.intp)
    if rows.min() < 0 or cols.min() < 0 or rows.max() >= shape[0] or cols.max() >= shape[1]:
        raise GridMismatch(f"{path} has indices outside a {shape} matrix")
    values = np.full(shape, np.nan, dtype=np.complex128)
    values[rows, cols] = table[:, 2] + 1j * table[:, 3]
    if np.isnan(values.real).any():
        raise GridMismatch(f"{path} does not define every entry of a {shape} matrix")
    return DenseSymbol(grid_x, grid_y, values)


# -----------------------------------------------------------------------------
# Symbol files
# -----------------------------------------------------------------------------
def parse_symbol(data: object, base_dir: Path | None = None) -> tuple[Symbol, Grid]:
    """Build a symbol and its feature grid from a decoded JSON document."""
    spec = _SymbolFileAdapter.validate_python(data)
    grid = spec.grid.build() if spec.grid is not None else default_grid()

    if isinstance(spec, SeparableSymbolFile):
        terms = tuple(SeparableTerm(t.f, t.g, t.coef) for t in spec.terms)
        return SeparableSymbol(terms), grid
    if isinstance(spec, DenseSymbolFile):
        values_path = Path(spec.values_file)
        if not values_path.is_absolute() and base_dir is not None:
            values_path = base_dir / values_path
        return read_dense_values(values_path, grid, grid.dual()), grid
    if isinstance(spec, TranslationInvariantFile):
        if isinstance(spec.profile, LaplaceProfile | RationalQuadraticProfile | MaternProfile):
            return from_kernel_profile(spec.profile), grid
        data_grid = grid.dual()
        profile = GridFunction(data_grid, spec.profile.evaluate(data_grid.lattice()))
        return from_translation_invariant(profile), grid
    if isinstance(spec, UniversalityFile):
        return universality_symbol(spec.eps, spec.polys, grid), grid
    return (
        gaussian_envelope_symbol(spec.eps_x, spec.eps_y, spec.coupling, spec.poly, grid),
        grid,
    )


def load_symbol(path: Path) -> tuple[Symbol, Grid]:
    """Load a symbol file.

    Raises:
        OSError: If the file cannot be read
        ValueError: If the JSON or its schema is malformed
    """
    data = json.loads(path.read_text(encoding="utf-8"))
    return parse_symbol(data, base_dir=path.parent)


def dump_symbol(sym: Symbol, path: Path, grid: Grid | None = None) -> Path:
    """Write a symbol file.

    Separable symbols with analytic factors are written inline. Anything
    else (dense symbols, grid-function factors) is densified on ``grid`` and
    its dual and written as a ``dense`` file with a sibling values CSV.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(sym, SeparableSymbol) and not any(
        isinstance(t.f, GridFunction) or isinstance(t.g, GridFunction) for t in sym.terms
    ):
        terms = [TermSpec(f=t.f, g=t.g, coef=t.coef) for t in sym.terms]  # type: ignore[arg-type]
        doc = SeparableSymbolFile(
            type="separable",
            terms=terms,
            grid=GridSpec.from_grid(grid) if grid is not None else None,
        )
        path.write_text(doc.model_dump_json(indent=2) + "\n", encoding="utf-8")
        return path

    if isinstance(sym, DenseSymbol):
        dense = sym if grid is None else densify(sym, grid, grid.dual())
    else:
        feature_grid = grid or _feature_grid(sym)
        dense = densify(sym, feature_grid, feature_grid.dual())
    values_path = path.with_name(f"{path.stem}_values.csv")
    write_dense_values(dense, values_path)
    doc_dense = DenseSymbolFile(
        type="dense",
        grid=GridSpec.from_grid(dense.grid_x),
        values_file=values_path.name,
    )
    path.write_text(doc_dense.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


def _feature_grid(sym: SeparableSymbol) -> Grid:
    for term in sym.terms:
        if isinstance(term.f, GridFunction):
            return term.f.grid
        if isinstance(term.g, GridFunction):
            return term.g.grid.dual()
    return default_grid()
