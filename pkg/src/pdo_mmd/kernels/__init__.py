"""PDO-based Mercer kernels.

This module provides:
- kernel_closed: pair-transform form of the kernel of a separable symbol
- kernel_grid: kernel matrix on the data grid for any symbol
- gram / psd_check: Gram matrices and their Mercer diagnostics
- Kernel grid CSV/JSON files
"""

from .forms import ClosedKernel, GridKernel, KernelForm, KernelTerm, kernel_closed, kernel_grid
from .gram import GramMatrix, PsdReport, gram, psd_check, read_kernel_grid, write_kernel_grid
from .transforms import ClosedTransform, GridTransform, PairTransform, pair_transform

__all__ = [
    # Kernels
    "ClosedKernel",
    "GridKernel",
    "KernelForm",
    "KernelTerm",
    "kernel_closed",
    "kernel_grid",
    # Transforms
    "ClosedTransform",
    "GridTransform",
    "PairTransform",
    "pair_transform",
    # Gram
    "GramMatrix",
    "PsdReport",
    "gram",
    "psd_check",
    "read_kernel_grid",
    "write_kernel_grid",
]
