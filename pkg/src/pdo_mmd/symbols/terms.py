"""Analytic factors of separable symbols.

Factors are pydantic models tagged by ``kind`` so symbol files can describe
them inline. Every factor evaluates on an (N, dim) point array; factors with a
closed-form unitary Fourier transform implement ``transform``, the others
raise TransformUnavailable.

Gaussian-type factors also convert to an ExpPoly (polynomial times an
isotropic Gaussian), the representation in which products of factors and
their transforms stay closed-form.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Annotated, Literal

import numpy as np
import numpy.typing as npt
from numpy.polynomial import hermite_e
from pydantic import Field, TypeAdapter, field_validator, model_validator

from pdo_mmd.exceptions import InvalidSymbol, TransformUnavailable
from pdo_mmd.numgrid import ComplexArray, FloatArray
from pdo_mmd.schemas.base import ComplexValue, SchemaBase
from pdo_mmd.symbols.profiles import KernelProfile

MultiIndex = tuple[int, ...]

_SQRT_2PI = math.sqrt(2.0 * math.pi)


def as_point_array(points: npt.ArrayLike) -> FloatArray:
    """Coerce to an (N, dim) float array; flat input is read as 1D points."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 0:
        return pts.reshape(1, 1)
    if pts.ndim == 1:
        return pts.reshape(-1, 1)
    return pts


def _per_axis(value: float | list[float], dim: int, name: str) -> FloatArray:
    if isinstance(value, int | float):
        return np.full(dim, float(value))
    arr = np.asarray(value, dtype=np.float64)
    if arr.shape != (dim,):
        raise InvalidSymbol(f"{name} has {arr.size} entries, expected {dim}")
    return arr


def _unit(n: int) -> FloatArray:
    coeffs = np.zeros(n + 1)
    coeffs[n] = 1.0
    return coeffs


def _hermite(n: int, z: FloatArray) -> FloatArray:
    """Probabilists' Hermite polynomial He_n."""
    return np.asarray(hermite_e.hermeval(z, _unit(n)), dtype=np.float64)


def _monomial_transform(k: int, width: float, y: FloatArray) -> ComplexArray:
    """Transform of u^k exp(-u^2 / 2w^2) in one variable."""
    wy = width * y
    return np.asarray(
        width * (-1j * width) ** k * _hermite(k, wy) * np.exp(-0.5 * wy**2),
        dtype=np.complex128,
    )


# -----------------------------------------------------------------------------
# Polynomials
# -----------------------------------------------------------------------------
class Monomial(SchemaBase):
    """One coefficient of a polynomial."""

    power: int | list[int] = Field(description="Exponent (1D) or multi-index")
    coef: ComplexValue = Field(default=1.0, description="Coefficient")

    @field_validator("power")
    @classmethod
    def _non_negative(cls, v: int | list[int]) -> int | list[int]:
        powers = [v] if isinstance(v, int) else v
        if any(p < 0 for p in powers):
            raise ValueError("exponents must be non-negative")
        return v

    def index(self, nvars: int) -> MultiIndex:
        """Multi-index over ``nvars`` variables."""
        if isinstance(self.power, int):
            if nvars != 1:
                raise InvalidSymbol(f"Scalar exponent given for a polynomial in {nvars} variables")
            return (self.power,)
        if len(self.power) != nvars:
            raise InvalidSymbol(f"Multi-index {self.power} does not have {nvars} entries")
        return tuple(self.power)


class Polynomial(SchemaBase):
    """Sparse polynomial as a list of monomials."""

    terms: list[Monomial] = Field(min_length=1)

    @classmethod
    def from_coefficients(cls, coeffs: list[complex]) -> Polynomial:
        """1D polynomial c0 + c1 x + c2 x^2 + ..."""
        return cls(terms=[Monomial(power=k, coef=c) for k, c in enumerate(coeffs)])

    def table(self, nvars: int) -> dict[MultiIndex, complex]:
        """Coefficients keyed by multi-index, duplicates summed."""
        out: dict[MultiIndex, complex] = {}
        for mono in self.terms:
            key = mono.index(nvars)
            out[key] = out.get(key, 0j) + mono.coef
        return out

    def degree(self, nvars: int) -> int:
        """Total degree over nonzero coefficients (-1 for the zero polynomial)."""
        return max((sum(k) for k, c in self.table(nvars).items() if c != 0), default=-1)

    def has_leading_term(self, nvars: int, degree: int) -> bool:
        """Whether some coefficient with total degree ``degree`` is nonzero."""
        return any(sum(k) == degree and c != 0 for k, c in self.table(nvars).items())

    def evaluate(self, points: npt.ArrayLike) -> ComplexArray:
        pts = as_point_array(points)
        out = np.zeros(len(pts), dtype=np.complex128)
        for key, coef in self.table(pts.shape[1]).items():
            out += coef * np.prod(pts ** np.asarray(key, dtype=np.float64), axis=1)
        return out


# -----------------------------------------------------------------------------
# Closed-form products
# -----------------------------------------------------------------------------
def _recenter(coeffs: dict[MultiIndex, complex], delta: FloatArray) -> dict[MultiIndex, complex]:
    """Re-express p(u) as a polynomial in v where u = v + delta."""
    if not np.any(delta):
        return dict(coeffs)
    out: dict[MultiIndex, complex] = {}
    for key, coef in coeffs.items():
        for sub in itertools.product(*(range(k + 1) for k in key)):
            factor = 1.0
            for k, m, d in zip(key, sub, delta, strict=True):
                factor *= math.comb(k, m) * d ** (k - m)
            out[sub] = out.get(sub, 0j) + coef * factor
    return out


def _poly_product(
    a: dict[MultiIndex, complex], b: dict[MultiIndex, complex]
) -> dict[MultiIndex, complex]:
    out: dict[MultiIndex, complex] = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            key = tuple(x + y for x, y in zip(ka, kb, strict=True))
            out[key] = out.get(key, 0j) + ca * cb
    return out


@dataclass(frozen=True)
class ExpPoly:
    """p(x - center) * exp(-|x - center|^2 / 2 width^2).

    ``width=None`` denotes a bare polynomial, which has no function transform.
    """

    coeffs: dict[MultiIndex, complex]
    center: FloatArray
    width: float | None

    @property
    def dim(self) -> int:
        return len(self.center)

    def conj(self) -> ExpPoly:
        return ExpPoly({k: c.conjugate() for k, c in self.coeffs.items()}, self.center, self.width)

    def evaluate(self, points: npt.ArrayLike) -> ComplexArray:
        u = as_point_array(points) - self.center
        out = np.zeros(len(u), dtype=np.complex128)
        for key, coef in self.coeffs.items():
            out += coef * np.prod(u ** np.asarray(key, dtype=np.float64), axis=1)
        if self.width is not None:
            out *= np.exp(-0.5 * np.sum(u**2, axis=1) / self.width**2)
        return out

    def times(self, other: ExpPoly) -> ExpPoly:
        """Pointwise product, again an ExpPoly."""
        if self.width is None and other.width is None:
            coeffs = _poly_product(
                _recenter(self.coeffs, -self.center), _recenter(other.coeffs, -other.center)
            )
            return ExpPoly(coeffs, np.zeros(self.dim), None)
        if self.width is None or other.width is None:
            poly, gauss = (self, other) if self.width is None else (other, self)
            shifted = _recenter(poly.coeffs, gauss.center - poly.center)
            return ExpPoly(_poly_product(shifted, gauss.coeffs), gauss.center, gauss.width)

        wa2, wb2 = self.width**2, other.width**2
        w2 = 1.0 / (1.0 / wa2 + 1.0 / wb2)
        center = w2 * (self.center / wa2 + other.center / wb2)
        gap = float(np.sum((self.center - other.center) ** 2))
        weight = math.exp(-0.5 * gap / (wa2 + wb2))
        coeffs = _poly_product(
            _recenter(self.coeffs, center - self.center),
            _recenter(other.coeffs, center - other.center),
        )
        return ExpPoly({k: weight * c for k, c in coeffs.items()}, center, math.sqrt(w2))

    def transform(self, freqs: npt.ArrayLike) -> ComplexArray:
        """Unitary forward transform at the given frequencies."""
        if self.width is None:
            raise TransformUnavailable("A bare polynomial has no function transform")
        y = as_point_array(freqs)
        out = np.zeros(len(y), dtype=np.complex128)
        for key, coef in self.coeffs.items():
            term = np.full(len(y), coef, dtype=np.complex128)
            for axis, k in enumerate(key):
                term *= _monomial_transform(k, self.width, y[:, axis])
            out += term
        return out * np.exp(-1j * (y @ self.center))


# -----------------------------------------------------------------------------
# Factor variants
# -----------------------------------------------------------------------------
class GaussHermite(SchemaBase):
    """s * prod_j He_{n_j}((x_j - c_j)/w) * exp(-|x - c|^2 / 2w^2).

    A scalar ``degree`` applies to every axis.
    """

    kind: Literal["gauss_hermite"] = "gauss_hermite"
    degree: int | list[int] = 0
    width: float = Field(default=1.0, gt=0.0)
    center: float | list[float] = 0.0
    scale: ComplexValue = 1.0

    @field_validator("degree")
    @classmethod
    def _non_negative(cls, v: int | list[int]) -> int | list[int]:
        if any(n < 0 for n in ([v] if isinstance(v, int) else v)):
            raise ValueError("degree must be non-negative")
        return v

    def degrees(self, dim: int) -> tuple[int, ...]:
        if isinstance(self.degree, int):
            return (self.degree,) * dim
        if len(self.degree) != dim:
            raise InvalidSymbol(f"degree has {len(self.degree)} entries, expected {dim}")
        return tuple(self.degree)

    def evaluate(self, points: npt.ArrayLike) -> ComplexArray:
        pts = as_point_array(points)
        dim = pts.shape[1]
        z = (pts - _per_axis(self.center, dim, "center")) / self.width
        values = np.exp(-0.5 * np.sum(z**2, axis=1)).astype(np.complex128)
        for axis, n in enumerate(self.degrees(dim)):
            if n:
                values *= _hermite(n, z[:, axis])
        return self.scale * values

    def transform(self, freqs: npt.ArrayLike) -> ComplexArray:
        y = as_point_array(freqs)
        dim = y.shape[1]
        center = _per_axis(self.center, dim, "center")
        w = self.width
        out = self.scale * np.exp(-1j * (y @ center))
        for axis, n in enumerate(self.degrees(dim)):
            wy = w * y[:, axis]
            out = out * w * (-1j * wy) ** n * np.exp(-0.5 * wy**2)
        return np.asarray(out, dtype=np.complex128)

    def as_exp_poly(self, dim: int) -> ExpPoly:
        per_axis = []
        for n in self.degrees(dim):
            power = hermite_e.herme2poly(_unit(n))
            per_axis.append([(k, p / self.width**k) for k, p in enumerate(power) if p != 0])
        coeffs: dict[MultiIndex, complex] = {}
        for combo in itertools.product(*per_axis):
            key = tuple(k for k, _ in combo)
            coeffs[key] = self.scale * math.prod(p for _, p in combo)
        return ExpPoly(coeffs, _per_axis(self.center, dim, "center"), self.width)


class PolyGauss(SchemaBase):
    """p(x) * exp(-|x|^2 / 2w^2); ``width=None`` is the bare polynomial p(x)."""

    kind: Literal["poly_gauss"] = "poly_gauss"
    poly: Polynomial
    width: float | None = Field(default=None, gt=0.0)

    def evaluate(self, points: npt.ArrayLike) -> ComplexArray:
        return self.as_exp_poly(as_point_array(points).shape[1]).evaluate(points)

    def transform(self, freqs: npt.ArrayLike) -> ComplexArray:
        if self.width is None:
            raise TransformUnavailable("Polynomial factor without Gaussian envelope")
        return self.as_exp_poly(as_point_array(freqs).shape[1]).transform(freqs)

    def as_exp_poly(self, dim: int) -> ExpPoly:
        return ExpPoly(self.poly.table(dim), np.zeros(dim), self.width)


class Indicator(SchemaBase):
    """s * 1{lo <= x < hi} on a box."""

    kind: Literal["indicator"] = "indicator"
    lo: float | list[float]
    hi: float | list[float]
    scale: ComplexValue = 1.0

    @model_validator(mode="after")
    def _ordered(self) -> Indicator:
        lo = np.atleast_1d(np.asarray(self.lo, dtype=np.float64))
        hi = np.atleast_1d(np.asarray(self.hi, dtype=np.float64))
        if lo.size > 1 and hi.size > 1 and lo.size != hi.size:
            raise ValueError("lo and hi must have the same number of entries")
        if np.any(lo >= hi):
            raise ValueError("indicator box requires lo < hi on every axis")
        return self

    def bounds(self, dim: int) -> tuple[FloatArray, FloatArray]:
        return _per_axis(self.lo, dim, "lo"), _per_axis(self.hi, dim, "hi")

    def evaluate(self, points: npt.ArrayLike) -> ComplexArray:
        pts = as_point_array(points)
        lo, hi = self.bounds(pts.shape[1])
        inside = np.all((pts >= lo) & (pts < hi), axis=1)
        return np.where(inside, self.scale, 0.0).astype(np.complex128)

    def transform(self, freqs: npt.ArrayLike) -> ComplexArray:
        y = as_point_array(freqs)
        lo, hi = self.bounds(y.shape[1])
        out = np.full(len(y), self.scale, dtype=np.complex128)
        for axis in range(y.shape[1]):
            v = y[:, axis]
            small = np.abs(v) < 1e-12
            safe = np.where(small, 1.0, v)
            ratio = (np.exp(-1j * safe * lo[axis]) - np.exp(-1j * safe * hi[axis])) / (
                1j * safe * _SQRT_2PI
            )
            out *= np.where(small, (hi[axis] - lo[axis]) / _SQRT_2PI, ratio)
        return out

    def intersect(self, other: Indicator, dim: int) -> Indicator | None:
        """Product with another indicator; None when the boxes are disjoint."""
        lo_a, hi_a = self.bounds(dim)
        lo_b, hi_b = other.bounds(dim)
        lo, hi = np.maximum(lo_a, lo_b), np.minimum(hi_a, hi_b)
        if np.any(lo >= hi):
            return None
        return Indicator(lo=lo.tolist(), hi=hi.tolist(), scale=self.scale * other.scale)


class Constant(SchemaBase):
    """Constant factor. Its transform is a delta, so none is reported."""

    kind: Literal["constant"] = "constant"
    value: ComplexValue = 1.0

    def evaluate(self, points: npt.ArrayLike) -> ComplexArray:
        return np.full(len(as_point_array(points)), self.value, dtype=np.complex128)

    def transform(self, freqs: npt.ArrayLike) -> ComplexArray:
        raise TransformUnavailable("Constant factor has a delta transform")

    def as_exp_poly(self, dim: int) -> ExpPoly:
        return ExpPoly({(0,) * dim: self.value}, np.zeros(dim), None)


class SpectralRoot(SchemaBase):
    """sqrt(gamma(x)) for the spectral density gamma of a radial kernel profile.

    The pair transform of the factor with itself is the profile k in closed form.
    """

    kind: Literal["spectral_root"] = "spectral_root"
    profile: KernelProfile

    def evaluate(self, points: npt.ArrayLike) -> ComplexArray:
        pts = as_point_array(points)
        rho = np.sqrt(np.sum(pts**2, axis=1))
        return np.sqrt(self.profile.spectral_density(rho, pts.shape[1])).astype(np.complex128)

    def transform(self, freqs: npt.ArrayLike) -> ComplexArray:
        raise TransformUnavailable("Square root of a spectral density has no closed transform")

    def kernel(self, z: npt.ArrayLike) -> ComplexArray:
        """k(z) = integral gamma(x) exp(i x.z) dx."""
        diffs = as_point_array(z)
        r = np.sqrt(np.sum(diffs**2, axis=1))
        return self.profile.kernel(r).astype(np.complex128)


AnalyticFactorModel = GaussHermite | PolyGauss | Indicator | Constant | SpectralRoot

AnalyticTerm = Annotated[AnalyticFactorModel, Field(discriminator="kind")]

AnalyticTermAdapter: TypeAdapter[AnalyticFactorModel] = TypeAdapter(AnalyticTerm)


def parse_term(data: object) -> AnalyticFactorModel:
    """Validate an analytic factor descriptor."""
    return AnalyticTermAdapter.validate_python(data)


def exp_poly_of(term: AnalyticFactorModel, dim: int) -> ExpPoly | None:
    """ExpPoly form of a factor, or None when it has none (indicators, spectral roots)."""
    if isinstance(term, Indicator | SpectralRoot):
        return None
    return term.as_exp_poly(dim)
