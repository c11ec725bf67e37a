"""Seeded random instances: symbol pairs and Gaussian-mixture density pairs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Self

import numpy as np
from pydantic import Field, ValidationError, model_validator

from pdo_mmd.config import get_settings
from pdo_mmd.exceptions import InvalidGrid, SpecError
from pdo_mmd.mmd.samples import SampleSet
from pdo_mmd.numgrid import Grid, GridFunction, make_grid
from pdo_mmd.schemas import ProfileKind, SchemaBase, SymbolFamily
from pdo_mmd.symbols import (
    GaussHermite,
    LaplaceProfile,
    MaternProfile,
    RationalQuadraticProfile,
    SeparableSymbol,
    SeparableTerm,
    Symbol,
    from_kernel_profile,
    from_translation_invariant,
    gaussian_envelope_symbol,
)

# Smallest mixture variance resolvable on the default data grids
MIN_VARIANCE = 0.05


class InstanceSpec(SchemaBase):
    """What generate_instance draws."""

    dim: int = Field(default=1, ge=1, le=2)
    rank_min: int = Field(default=1, ge=1)
    rank_max: int = Field(default=3, ge=1, le=8)
    components: int = Field(default=2, ge=1, le=4, description="Mixture components per density")
    family: SymbolFamily = SymbolFamily.SEPARABLE_GAUSS_HERMITE
    profile: ProfileKind = Field(
        default=ProfileKind.GAUSSIAN_SUM,
        description="Kernel profile of the translation_invariant family",
    )
    grid_n: int | None = Field(default=None, ge=8)
    half_width: float | None = Field(default=None, gt=0.0)

    @model_validator(mode="after")
    def _rank_range(self) -> Self:
        if self.rank_min > self.rank_max:
            raise ValueError(f"rank_min {self.rank_min} exceeds rank_max {self.rank_max}")
        return self

    @classmethod
    def parse(cls, data: dict[str, Any]) -> InstanceSpec:
        """Validate a spec document.

        Raises:
            SpecError: On any validation failure
        """
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise SpecError(f"Invalid instance spec: {e}") from e

    def feature_grid(self) -> Grid:
        _, n, half_width = get_settings().grid.resolve(self.dim)
        return make_grid(
            self.dim,
            self.grid_n or n,
            self.half_width if self.half_width is not None else half_width,
        )


@dataclass(frozen=True)
class Mixture:
    """Isotropic Gaussian mixture parameters."""

    weights: tuple[float, ...]
    means: tuple[tuple[float, ...], ...]
    variances: tuple[float, ...]

    def density(self, grid: Grid) -> GridFunction:
        """Mixture pdf on ``grid``, renormalized to unit quadrature mass."""
        pts = grid.lattice()
        dim = grid.dim
        values = np.zeros(grid.size)
        for w, mean, var in zip(self.weights, self.means, self.variances, strict=True):
            sq = np.sum((pts - np.asarray(mean)) ** 2, axis=1)
            values += w * np.exp(-sq / (2.0 * var)) / (2.0 * np.pi * var) ** (dim / 2)
        values /= values.sum() * grid.cell_volume
        return GridFunction(grid, values)

    def sample(self, n: int, seed: int = 0) -> SampleSet:
        """Draw n points: a component per point, then its isotropic Gaussian."""
        rng = np.random.default_rng(seed)
        labels = rng.choice(len(self.weights), size=n, p=np.asarray(self.weights))
        means = np.asarray(self.means)[labels]
        scales = np.sqrt(np.asarray(self.variances))[labels]
        points = means + scales[:, None] * rng.standard_normal(means.shape)
        return SampleSet(points, seed=seed)

    def to_dict(self) -> dict[str, Any]:
        return {
            "weights": list(self.weights),
            "means": [list(m) for m in self.means],
            "variances": list(self.variances),
        }


@dataclass(frozen=True, eq=False)
class Instance:
    """Two symbols and two densities on one grid pair."""

    seed: int
    spec: InstanceSpec
    grid: Grid
    symbols: tuple[Symbol, Symbol] = field(repr=False)
    u: GridFunction = field(repr=False)
    v: GridFunction = field(repr=False)
    mixtures: tuple[Mixture, Mixture] = field(repr=False)

    @property
    def data_grid(self) -> Grid:
        return self.grid.dual()


def _mixture(rng: np.random.Generator, components: int, dim: int) -> Mixture:
    weights = rng.dirichlet(np.ones(components))
    means = rng.uniform(-2.0, 2.0, size=(components, dim))
    variances = rng.uniform(0.25, 1.0, size=components)
    return Mixture(
        weights=tuple(float(w) for w in weights),
        means=tuple(tuple(float(c) for c in m) for m in means),
        variances=tuple(max(float(s), MIN_VARIANCE) for s in variances),
    )


def _gauss_hermite_symbol(rng: np.random.Generator, rank: int) -> SeparableSymbol:
    terms = []
    for _ in range(rank):
        f = GaussHermite(
            degree=int(rng.integers(0, 3)),
            width=float(rng.uniform(0.7, 1.5)),
            center=float(rng.uniform(-1.0, 1.0)),
        )
        g = GaussHermite(
            degree=int(rng.integers(0, 2)),
            width=float(rng.uniform(1.0, 2.5)),
            center=float(rng.uniform(-1.0, 1.0)),
        )
        coef = complex(rng.standard_normal(), rng.standard_normal())
        terms.append(SeparableTerm(f, g, coef))
    return SeparableSymbol(tuple(terms))


def _envelope_symbol(rng: np.random.Generator, grid: Grid) -> Symbol:
    eps_x = float(rng.uniform(0.6, 1.2))
    eps_y = float(rng.uniform(0.6, 1.2))
    limit = 1.0 / (2.0 * eps_x * eps_y)
    coupling = float(rng.uniform(-0.5, 0.5)) * limit
    return gaussian_envelope_symbol(eps_x, eps_y, coupling, grid=grid)


def _translation_invariant_symbol(
    rng: np.random.Generator, grid: Grid, kind: ProfileKind
) -> SeparableSymbol:
    if kind is ProfileKind.GAUSSIAN_SUM:
        data_grid = grid.dual()
        z = data_grid.lattice()
        profile = np.zeros(data_grid.size)
        for _ in range(int(rng.integers(1, 3))):
            width = float(rng.uniform(0.5, 1.5))
            profile += rng.uniform(0.5, 1.5) * np.exp(-np.sum(z**2, axis=1) / (2.0 * width**2))
        return from_translation_invariant(GridFunction(data_grid, profile))

    length = float(rng.uniform(0.5, 1.5))
    if kind is ProfileKind.LAPLACE:
        return from_kernel_profile(LaplaceProfile(length=length))
    if kind is ProfileKind.RATIONAL_QUADRATIC:
        alpha = float(rng.uniform(1.5, 3.0))
        return from_kernel_profile(RationalQuadraticProfile(length=length, alpha=alpha))
    nu = float(rng.choice([0.5, 1.5, 2.5]))
    return from_kernel_profile(MaternProfile(length=length, nu=nu))


def draw_symbol(rng: np.random.Generator, spec: InstanceSpec, grid: Grid) -> Symbol:
    """One random symbol of the instance family."""
    if spec.family is SymbolFamily.SEPARABLE_GAUSS_HERMITE:
        rank = int(rng.integers(spec.rank_min, spec.rank_max + 1))
        return _gauss_hermite_symbol(rng, rank)
    if spec.family is SymbolFamily.DENSE_GAUSSIAN_ENVELOPE:
        return _envelope_symbol(rng, grid)
    return _translation_invariant_symbol(rng, grid, spec.profile)


def generate_instance(seed: int, spec: InstanceSpec | None = None) -> Instance:
    """Reproducible instance for ``seed``.

    Raises:
        SpecError: If the spec's grid cannot be built
    """
    instance_spec = spec or InstanceSpec()
    try:
        grid = instance_spec.feature_grid()
    except InvalidGrid as e:
        raise SpecError(str(e)) from e
    rng = np.random.default_rng(seed)
    first = draw_symbol(rng, instance_spec, grid)
    second = draw_symbol(rng, instance_spec, grid)
    mixtures = (
        _mixture(rng, instance_spec.components, instance_spec.dim),
        _mixture(rng, instance_spec.components, instance_spec.dim),
    )
    data_grid = grid.dual()
    return Instance(
        seed=seed,
        spec=instance_spec,
        grid=grid,
        symbols=(first, second),
        u=mixtures[0].density(data_grid),
        v=mixtures[1].density(data_grid),
        mixtures=mixtures,
    )
