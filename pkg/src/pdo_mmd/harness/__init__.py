"""Randomized verification of the operator inequalities and identities.

This module provides:
- InstanceSpec / generate_instance: seeded symbol and density pairs
- CHECKS: lhs/rhs evaluation per check id
- run_check: seeded trials on a thread pool
- CheckReport / aggregate / write_reports: JSON reports
"""

from .checks import CHECKS, INFORMATIONAL, CheckContext, CheckOutcome
from .instances import Instance, InstanceSpec, Mixture, generate_instance
from .results import CheckReport, TrialRecord, aggregate, write_reports
from .runner import run_check, run_trial, trial_seeds

__all__ = [
    # Instances
    "Instance",
    "InstanceSpec",
    "Mixture",
    "generate_instance",
    # Checks
    "CHECKS",
    "INFORMATIONAL",
    "CheckContext",
    "CheckOutcome",
    # Running
    "run_check",
    "run_trial",
    "trial_seeds",
    # Reports
    "CheckReport",
    "TrialRecord",
    "aggregate",
    "write_reports",
]
