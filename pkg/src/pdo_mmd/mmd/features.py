"""Named feature functions for configs and the CLI.

- ``const``: g = 1
- ``coord_k``: k-th coordinate (1-based)
- ``poly:c0,c1,...``: c0 + c1 x1 + c2 x1^2 + ...
- ``hermite:n``: probabilists' Hermite polynomial He_n(x1)
"""

from __future__ import annotations

from numpy.polynomial import hermite_e

from pdo_mmd.symbols import AnalyticFactor, Constant, Monomial, Polynomial, PolyGauss

FEATURE_NAMES = ("const", "coord_k", "poly:<c0,c1,...>", "hermite:<n>")


def _first_axis(k: int, dim: int) -> int | list[int]:
    return k if dim == 1 else [k] + [0] * (dim - 1)


def _first_axis_poly(coeffs: list[float], dim: int) -> PolyGauss:
    terms = [Monomial(power=_first_axis(k, dim), coef=c) for k, c in enumerate(coeffs)]
    return PolyGauss(poly=Polynomial(terms=terms))


def resolve_feature(name: str, dim: int = 1) -> AnalyticFactor:
    """Factor for a registry name.

    Raises:
        ValueError: For unknown names or malformed parameters
    """
    key = name.strip()
    if key == "const":
        return Constant(value=1.0)
    if key.startswith("coord_"):
        axis = int(key.removeprefix("coord_"))
        if not 1 <= axis <= dim:
            raise ValueError(f"{key}: coordinate index must be in 1..{dim}")
        power = [0] * dim
        power[axis - 1] = 1
        mono = Monomial(power=1 if dim == 1 else power)
        return PolyGauss(poly=Polynomial(terms=[mono]))
    if key.startswith("poly:"):
        coeffs = [float(c) for c in key.removeprefix("poly:").split(",")]
        return _first_axis_poly(coeffs, dim)
    if key.startswith("hermite:"):
        n = int(key.removeprefix("hermite:"))
        if n < 0:
            raise ValueError(f"{key}: degree must be non-negative")
        unit = [0.0] * n + [1.0]
        return _first_axis_poly([float(c) for c in hermite_e.herme2poly(unit)], dim)
    raise ValueError(f"Unknown feature {name!r}; expected one of {', '.join(FEATURE_NAMES)}")
