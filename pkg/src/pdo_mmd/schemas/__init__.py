"""Pydantic schemas and shared enums.

Symbol-file schemas live next to their loaders in ``pdo_mmd.symbols.io``.
"""

from .base import ComplexValue, SchemaBase
from .enums import (
    CheckId,
    EstimatorMethod,
    ModelFamily,
    OptimizerKind,
    ProfileKind,
    SymbolFamily,
)
from .run import RunConfig

__all__ = [
    # Base
    "ComplexValue",
    "SchemaBase",
    # Enums
    "CheckId",
    "EstimatorMethod",
    "ModelFamily",
    "OptimizerKind",
    "ProfileKind",
    "SymbolFamily",
    # Run configuration
    "RunConfig",
]
