"""Reparameterized parametric samplers.

A model owns fixed standard-normal base noise (and, for mixtures, fixed
uniform draws assigning components), so sampling is a deterministic function
of the parameter vector.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt
from scipy.special import expit

from pdo_mmd.config import get_settings
from pdo_mmd.exceptions import NoiseExhausted
from pdo_mmd.mmd import SampleSet
from pdo_mmd.numgrid import FloatArray
from pdo_mmd.schemas import ModelFamily


def parameter_names(family: ModelFamily, dim: int) -> list[str]:
    """Names of the entries of a family's parameter vector."""
    axes = [f"x{k + 1}" for k in range(dim)]
    if family is ModelFamily.GAUSSIAN:
        return [f"mean_{a}" for a in axes] + [f"log_std_{a}" for a in axes]
    return ["mean_a", "log_std_a", "mean_b", "log_std_b", "logit_weight"]


def default_init(family: ModelFamily, dim: int) -> FloatArray:
    if family is ModelFamily.GAUSSIAN:
        return np.zeros(2 * dim)
    return np.array([-1.0, 0.0, 1.0, 0.0, 0.0])


@dataclass(frozen=True, eq=False)
class ParametricModel:
    """Sampler x = mu + sigma * z over fixed base noise z."""

    family: ModelFamily
    dim: int
    params: FloatArray
    base_noise: FloatArray = field(repr=False)
    uniforms: FloatArray = field(repr=False)
    seed: int = 0

    @classmethod
    def create(
        cls,
        family: ModelFamily | str,
        dim: int = 1,
        noise_size: int | None = None,
        seed: int = 0,
        init: npt.ArrayLike | None = None,
    ) -> ParametricModel:
        """Draw the base noise and set the initial parameters.

        Raises:
            ValueError: For a mixture in more than one dimension or an init
                vector of the wrong length
        """
        kind = ModelFamily(family)
        if kind is ModelFamily.MIXTURE2 and dim != 1:
            raise ValueError("mixture2 models are one-dimensional")
        size = get_settings().fit.noise_size if noise_size is None else noise_size
        params = default_init(kind, dim) if init is None else np.asarray(init, dtype=np.float64)
        expected = len(parameter_names(kind, dim))
        if params.shape != (expected,):
            raise ValueError(f"{kind.value} in {dim}D needs {expected} parameters")

        rng = np.random.default_rng(seed)
        return cls(
            family=kind,
            dim=dim,
            params=params,
            base_noise=rng.standard_normal((size, dim)),
            uniforms=rng.uniform(size=size),
            seed=seed,
        )

    @property
    def noise_size(self) -> int:
        return len(self.base_noise)

    @property
    def names(self) -> list[str]:
        return parameter_names(self.family, self.dim)

    def with_params(self, params: npt.ArrayLike) -> ParametricModel:
        return dataclasses.replace(self, params=np.asarray(params, dtype=np.float64))


def sample_model(model: ParametricModel, n: int | None = None) -> SampleSet:
    """First n transformed base-noise draws (all of them by default).

    Raises:
        NoiseExhausted: If n exceeds the number of base-noise draws
    """
    count = model.noise_size if n is None else n
    if count > model.noise_size:
        raise NoiseExhausted(f"Requested {count} samples from {model.noise_size} noise draws")
    z = model.base_noise[:count]
    p = model.params

    if model.family is ModelFamily.GAUSSIAN:
        mean, log_std = p[: model.dim], p[model.dim :]
        return SampleSet(mean + np.exp(log_std) * z, seed=model.seed)

    mean_a, log_std_a, mean_b, log_std_b, logit = p
    first = model.uniforms[:count] < expit(logit)
    points = np.where(
        first[:, None],
        mean_a + np.exp(log_std_a) * z,
        mean_b + np.exp(log_std_b) * z,
    )
    return SampleSet(points, seed=model.seed)
