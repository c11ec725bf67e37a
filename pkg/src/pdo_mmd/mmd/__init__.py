"""MMD estimators, witness and local moments.

This module provides:
- SampleSet and sample CSV files
- Spectral, Gram and density-grid MMD estimators
- The normalized witness and its data-side critic
- Local moments and per-term moment fields of canonical symbols
- The named feature registry used by configs
"""

from .estimators import (
    check_density,
    density_embedding,
    embedding,
    grid_warnings,
    mmd_density,
    mmd_gram,
    mmd_spectral,
    weighted_char_fn,
)
from .features import FEATURE_NAMES, resolve_feature
from .moments import MomentField, local_moment, moment_field, write_moments
from .results import GridWarning, MmdEstimate, MmdMethod
from .samples import SampleSet, read_samples, write_samples
from .witness import WitnessFunction, witness

__all__ = [
    # Samples
    "SampleSet",
    "read_samples",
    "write_samples",
    # Estimators
    "GridWarning",
    "MmdEstimate",
    "MmdMethod",
    "check_density",
    "density_embedding",
    "embedding",
    "grid_warnings",
    "mmd_density",
    "mmd_gram",
    "mmd_spectral",
    "weighted_char_fn",
    # Witness
    "WitnessFunction",
    "witness",
    # Moments
    "MomentField",
    "local_moment",
    "moment_field",
    "write_moments",
    # Features
    "FEATURE_NAMES",
    "resolve_feature",
]
