"""Optimal witness of the spectral MMD.

MMD = ||dh||_2 with dh = h_u - h_v, so the unit-norm maximizer of
Re <f, dh> over the L2 ball is f* = dh / ||dh||. Pulled back to the data
side it becomes the critic c(y) whose mean gap E_u c - E_v c is the MMD.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from pdo_mmd.config import get_settings
from pdo_mmd.exceptions import DegenerateWitness
from pdo_mmd.logging import get_logger
from pdo_mmd.mmd.estimators import embedding, grid_warnings
from pdo_mmd.mmd.results import GridWarning
from pdo_mmd.mmd.samples import SampleSet
from pdo_mmd.numgrid import (
    ComplexArray,
    Grid,
    GridFunction,
    NormKind,
    default_grid,
    inner_product,
    norm,
)
from pdo_mmd.symbols import SeparableSymbol, factor_on_grid, factor_values

logger = get_logger(__name__)

# Critic points per block
_POINT_BLOCK = 512


@dataclass(frozen=True, eq=False)
class WitnessFunction:
    """Unit-norm witness f* on the feature grid."""

    function: GridFunction
    objective: float
    difference: GridFunction = field(repr=False)
    symbol: SeparableSymbol = field(repr=False)
    warnings: tuple[GridWarning, ...] = ()

    @property
    def grid(self) -> Grid:
        return self.function.grid

    def objective_of(self, h: GridFunction) -> float:
        """Re <h, dh> for a competitor h."""
        return inner_product(h, self.difference).real

    def critic(self, points: npt.ArrayLike) -> ComplexArray:
        """c(y) = sum_i c_i g_i(y) integral conj(f*(x)) f_i(x) exp(i x.y) dx."""
        pts = self.grid.as_points(points)
        x = self.grid.lattice()
        weight = np.conj(self.function.values) * self.grid.cell_volume
        out = np.zeros(len(pts), dtype=np.complex128)
        for term in self.symbol.terms:
            if term.coef == 0:
                continue
            profile = weight * factor_on_grid(term.f, self.grid).values
            g = factor_values(term.g, pts)
            for start in range(0, len(pts), _POINT_BLOCK):
                block = slice(start, start + _POINT_BLOCK)
                phases = np.exp(1j * (pts[block] @ x.T))
                out[block] += term.coef * g[block] * (phases @ profile)
        return out


def witness(
    su: SampleSet,
    sv: SampleSet,
    sym: SeparableSymbol,
    grid: Grid | None = None,
) -> WitnessFunction:
    """Normalized witness of the MMD between two sample sets.

    Raises:
        DegenerateWitness: If the spectral MMD is at most the witness floor
    """
    feature_grid = grid or default_grid(su.dim)
    difference = embedding(su, sym, feature_grid) - embedding(sv, sym, feature_grid)
    value = norm(difference, NormKind.L2)
    if value <= get_settings().tolerances.witness_min:
        raise DegenerateWitness(f"MMD {value:.3g} too small: distributions indistinguishable")
    logger.debug("Witness objective {:.6g}", value)
    return WitnessFunction(
        function=difference / value,
        objective=value,
        difference=difference,
        symbol=sym,
        warnings=grid_warnings(feature_grid, su, sv),
    )
