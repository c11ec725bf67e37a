"""Operator discretizations, Nystrom SVD and operator norms.

This module provides:
- build_operator: integral_OF, pdo_xD and pdo_Dx grid matrices of a symbol
- nystrom_svd / truncate: singular expansion and rank-r truncation
- two_inf_norm / hs_norm / schwartz_diagonal: the norms the bounds are stated in
- c_f_constant / c_f_growth / tail_sum / retained_variance
"""

from .io import format_row, write_svd
from .norms import hs_norm, row_norms, schwartz_diagonal, separable_bound, two_inf_norm
from .operators import OperatorKind, OperatorMatrix, build_operator
from .svd import (
    CfGrowth,
    CfProfile,
    SvdResult,
    c_f_constant,
    c_f_growth,
    numerical_rank,
    nystrom_svd,
    retained_variance,
    tail_sum,
    truncate,
)

__all__ = [
    # Operators
    "OperatorKind",
    "OperatorMatrix",
    "build_operator",
    # Norms
    "hs_norm",
    "row_norms",
    "schwartz_diagonal",
    "separable_bound",
    "two_inf_norm",
    # SVD
    "CfGrowth",
    "CfProfile",
    "SvdResult",
    "c_f_constant",
    "c_f_growth",
    "numerical_rank",
    "nystrom_svd",
    "retained_variance",
    "tail_sum",
    "truncate",
    # Export
    "format_row",
    "write_svd",
]
