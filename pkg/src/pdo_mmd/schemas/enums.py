"""Enums shared by config files, reports and the CLI."""

from enum import Enum


class SymbolFamily(str, Enum):
    """Random symbol families generated by the harness."""

    SEPARABLE_GAUSS_HERMITE = "separable_gauss_hermite"
    DENSE_GAUSSIAN_ENVELOPE = "dense_gaussian_envelope"
    TRANSLATION_INVARIANT = "translation_invariant"


class ProfileKind(str, Enum):
    """Kernel profiles of the translation-invariant harness family."""

    GAUSSIAN_SUM = "gaussian_sum"
    LAPLACE = "laplace"
    RATIONAL_QUADRATIC = "rational_quadratic"
    MATERN = "matern"


class CheckId(str, Enum):
    """Harness checks.

    Values sort in report order; ``shifted`` is informational.
    """

    TRIANGLE = "triangle"
    LIPSCHITZ = "lipschitz"
    TRUNC_2INF = "trunc_2inf"
    TRUNC_HS = "trunc_hs"
    DIAG = "diag"
    HS_EQ = "hs_eq"
    DUAL_NORM_BOUND = "dual_norm_bound"
    SHIFTED = "shifted"


class ModelFamily(str, Enum):
    """Parametric sampler families of the fit module."""

    GAUSSIAN = "gaussian"
    MIXTURE2 = "mixture2"


class OptimizerKind(str, Enum):
    """Optimizers available to fit_mmd."""

    NELDER_MEAD = "nelder_mead"
    FD_GRADIENT = "fd_gradient"


class EstimatorMethod(str, Enum):
    """Estimator selected by the ``mmd`` command."""

    GRAM = "gram"
    SPECTRAL = "spectral"
    DENSITY = "density"
