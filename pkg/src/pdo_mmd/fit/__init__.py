"""Fit parametric samplers by MMD minimization.

This module provides:
- ParametricModel / sample_model: reparameterized samplers over fixed noise
- fit_mmd: Nelder-Mead or finite-difference gradient descent on the spectral MMD
- FitResult: parameters, trajectory and stop reason
"""

from .models import ParametricModel, default_init, parameter_names, sample_model
from .optimize import MmdObjective, fd_gradient_step, fit_mmd
from .results import FitResult, StopReason

__all__ = [
    "FitResult",
    "MmdObjective",
    "ParametricModel",
    "StopReason",
    "default_init",
    "fd_gradient_step",
    "fit_mmd",
    "parameter_names",
    "sample_model",
]
