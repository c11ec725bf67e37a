"""Radial kernel profiles k(|s - t|) with closed-form spectral densities.

Each profile pairs a kernel k with its spectral density gamma, normalized so
that k(z) = integral gamma(x) exp(i x.z) dx. The translation-invariant symbol
of k is sqrt(gamma(x)) * 1.
"""

from __future__ import annotations

import math
from typing import Annotated, Literal

import numpy as np
import numpy.typing as npt
from pydantic import Field
from scipy import special

from pdo_mmd.exceptions import InvalidSymbol
from pdo_mmd.numgrid import FloatArray
from pdo_mmd.schemas.base import SchemaBase


def _radii(r: npt.ArrayLike) -> FloatArray:
    return np.abs(np.asarray(r, dtype=np.float64))


class LaplaceProfile(SchemaBase):
    """s * exp(-|z| / l)."""

    kind: Literal["laplace"] = "laplace"
    length: float = Field(default=1.0, gt=0.0)
    scale: float = Field(default=1.0, gt=0.0)

    def kernel(self, r: npt.ArrayLike) -> FloatArray:
        return self.scale * np.exp(-_radii(r) / self.length)

    def spectral_density(self, rho: npt.ArrayLike, dim: int) -> FloatArray:
        """Multivariate Cauchy density c_d l^d / (1 + l^2 rho^2)^((d+1)/2)."""
        half = (dim + 1) / 2.0
        norm = math.gamma(half) / math.pi**half * self.length**dim
        return self.scale * norm * (1.0 + (self.length * _radii(rho)) ** 2) ** (-half)


class RationalQuadraticProfile(SchemaBase):
    """s * (1 + |z|^2 / 2 alpha l^2)^(-alpha), a Gamma scale mixture of Gaussians."""

    kind: Literal["rational_quadratic"] = "rational_quadratic"
    length: float = Field(default=1.0, gt=0.0)
    alpha: float = Field(default=1.0, gt=0.0)
    scale: float = Field(default=1.0, gt=0.0)

    def kernel(self, r: npt.ArrayLike) -> FloatArray:
        b = 2.0 * self.alpha * self.length**2
        return self.scale * (1.0 + _radii(r) ** 2 / b) ** (-self.alpha)

    def spectral_density(self, rho: npt.ArrayLike, dim: int) -> FloatArray:
        """(b/4pi)^(d/2) / Gamma(alpha) * 2 c^(nu/2) K_nu(2 sqrt(c)), c = b rho^2 / 4.

        Raises:
            InvalidSymbol: Unless alpha > dim / 2 (gamma is unbounded at 0 otherwise)
        """
        nu = self.alpha - dim / 2.0
        if nu <= 0:
            raise InvalidSymbol(
                f"rational_quadratic needs alpha > {dim / 2} in {dim}D, got {self.alpha}"
            )
        b = 2.0 * self.alpha * self.length**2
        c = b * _radii(rho) ** 2 / 4.0
        safe = np.where(c > 0, c, 1.0)
        tail = 2.0 * safe ** (nu / 2.0) * special.kv(nu, 2.0 * np.sqrt(safe))
        mixture = np.where(c > 0, tail, special.gamma(nu))
        norm = self.scale * (b / (4.0 * math.pi)) ** (dim / 2.0) / special.gamma(self.alpha)
        return np.asarray(norm * mixture, dtype=np.float64)


class MaternProfile(SchemaBase):
    """s * 2^(1-nu)/Gamma(nu) (sqrt(2 nu) |z|/l)^nu K_nu(sqrt(2 nu) |z|/l)."""

    kind: Literal["matern"] = "matern"
    length: float = Field(default=1.0, gt=0.0)
    nu: float = Field(default=1.5, gt=0.0)
    scale: float = Field(default=1.0, gt=0.0)

    def kernel(self, r: npt.ArrayLike) -> FloatArray:
        u = math.sqrt(2.0 * self.nu) * _radii(r) / self.length
        safe = np.where(u > 0, u, 1.0)
        log_front = (1.0 - self.nu) * math.log(2.0) - special.gammaln(self.nu)
        values = np.exp(log_front + self.nu * np.log(safe)) * special.kv(self.nu, safe)
        return self.scale * np.where(u > 0, values, 1.0)

    def spectral_density(self, rho: npt.ArrayLike, dim: int) -> FloatArray:
        """Student-t type density proportional to (2 nu / l^2 + rho^2)^(-(nu + d/2))."""
        lam = 2.0 * self.nu / self.length**2
        power = self.nu + dim / 2.0
        log_norm = (
            special.gammaln(power)
            - special.gammaln(self.nu)
            - 0.5 * dim * math.log(math.pi)
            + self.nu * math.log(lam)
        )
        return self.scale * np.exp(log_norm - power * np.log(lam + _radii(rho) ** 2))


KernelProfile = Annotated[
    LaplaceProfile | RationalQuadraticProfile | MaternProfile,
    Field(discriminator="kind"),
]
