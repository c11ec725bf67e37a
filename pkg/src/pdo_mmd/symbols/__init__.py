"""PDO symbols F(x, y).

This module provides:
- Analytic factors (Gauss-Hermite, polynomial-Gaussian, indicator, constant,
  square roots of kernel spectral densities)
- Radial kernel profiles (Laplace, rational quadratic, Matern)
- SeparableSymbol / DenseSymbol with evaluation, densification and algebra
- Constructions: translation-invariant, universality and Gaussian-envelope symbols
- canonicalize: rewriting into terms with pdf Fourier transforms
- JSON symbol files
"""

from .canonical import CanonicalSymbol, canonicalize
from .construct import (
    from_kernel_profile,
    from_translation_invariant,
    gaussian_envelope_symbol,
    universality_symbol,
)
from .io import dump_symbol, load_symbol, parse_symbol, read_dense_values, write_dense_values
from .separable import (
    AnalyticFactor,
    DenseSymbol,
    Factor,
    SeparableSymbol,
    SeparableTerm,
    Symbol,
    add,
    densify,
    evaluate,
    evaluate_pairs,
    factor_on_grid,
    factor_values,
    feature_dimension,
    is_zero,
    negate,
    scale,
    subtract,
)
from .profiles import KernelProfile, LaplaceProfile, MaternProfile, RationalQuadraticProfile
from .terms import (
    AnalyticTerm,
    Constant,
    ExpPoly,
    GaussHermite,
    Indicator,
    Monomial,
    Polynomial,
    PolyGauss,
    SpectralRoot,
    exp_poly_of,
    parse_term,
)

__all__ = [
    # Factors
    "AnalyticFactor",
    "AnalyticTerm",
    "Constant",
    "ExpPoly",
    "Factor",
    "GaussHermite",
    "Indicator",
    "Monomial",
    "PolyGauss",
    "Polynomial",
    "SpectralRoot",
    "exp_poly_of",
    "parse_term",
    # Kernel profiles
    "KernelProfile",
    "LaplaceProfile",
    "MaternProfile",
    "RationalQuadraticProfile",
    # Symbols
    "DenseSymbol",
    "SeparableSymbol",
    "SeparableTerm",
    "Symbol",
    "add",
    "densify",
    "evaluate",
    "evaluate_pairs",
    "factor_on_grid",
    "factor_values",
    "feature_dimension",
    "is_zero",
    "negate",
    "scale",
    "subtract",
    # Constructions
    "CanonicalSymbol",
    "canonicalize",
    "from_kernel_profile",
    "from_translation_invariant",
    "gaussian_envelope_symbol",
    "universality_symbol",
    # Files
    "dump_symbol",
    "load_symbol",
    "parse_symbol",
    "read_dense_values",
    "write_dense_values",
]
