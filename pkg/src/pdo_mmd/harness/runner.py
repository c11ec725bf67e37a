"""Run a check over seeded trials.

Trial seeds come from a SeedSequence of the master seed, so trial k of a run
can be replayed alone with generate_instance(report.seeds[k]). Trials run on
a thread pool capped by PDOMMD_THREADS; records are merged by trial index.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from pdo_mmd.config import get_settings
from pdo_mmd.exceptions import HarnessError, PdoMmdError
from pdo_mmd.harness.checks import CHECKS, INFORMATIONAL, CheckContext
from pdo_mmd.harness.instances import InstanceSpec, generate_instance
from pdo_mmd.harness.results import CheckReport, TrialRecord
from pdo_mmd.logging import bind_check, bind_trial
from pdo_mmd.schemas import CheckId


def trial_seeds(seed: int, trials: int) -> list[int]:
    """Independent per-trial seeds derived from a master seed."""
    state = np.random.SeedSequence(seed).generate_state(trials)
    return [int(s) for s in state]


def run_trial(
    check: CheckId,
    trial: int,
    seed: int,
    spec: InstanceSpec,
    ctx: CheckContext,
) -> TrialRecord:
    """Evaluate one trial; numerical failures are recorded, not raised."""
    log = bind_trial(check.value, trial, seed)
    try:
        outcome = CHECKS[check](generate_instance(seed, spec), ctx)
    except (PdoMmdError, ArithmeticError, np.linalg.LinAlgError) as e:
        log.warning("Trial failed: {}", e)
        return TrialRecord.from_error(trial, seed, e)

    record = TrialRecord(
        trial=trial,
        seed=seed,
        lhs=outcome.lhs,
        rhs=outcome.rhs,
        tolerance=outcome.tolerance,
        passed=outcome.passed,
        details=outcome.details,
    )
    if not record.passed and check not in INFORMATIONAL:
        log.warning(
            "Violation: lhs={:.6g} rhs={:.6g} margin={:.3g}",
            record.lhs,
            record.rhs,
            record.margin,
        )
    else:
        log.debug("lhs={:.6g} rhs={:.6g}", record.lhs, record.rhs)
    return record


def run_check(
    check: CheckId | str,
    trials: int | None = None,
    seed: int = 0,
    spec: InstanceSpec | None = None,
    threads: int | None = None,
) -> CheckReport:
    """Run ``trials`` seeded trials of one check.

    Args:
        check: Check id
        trials: Number of trials (defaults to the harness setting)
        seed: Master seed
        spec: Instance spec (defaults to 1D separable Gauss-Hermite symbols)
        threads: Worker threads (defaults to PDOMMD_THREADS)

    Raises:
        HarnessError: For an unknown check or a nonpositive trial count
    """
    settings = get_settings()
    try:
        check_id = CheckId(check)
    except ValueError as e:
        known = ", ".join(c.value for c in CheckId)
        raise HarnessError(f"Unknown check {check!r}; expected one of {known}") from e
    count = settings.harness.trials if trials is None else trials
    if count < 1:
        raise HarnessError(f"trials must be at least 1, got {count}")

    instance_spec = spec or InstanceSpec()
    ctx = CheckContext(
        rel_tol=settings.tolerances.check,
        rank_sweep=settings.harness.rank_sweep,
    )
    seeds = trial_seeds(seed, count)
    workers = min(threads or settings.threads, count)

    log = bind_check(check_id.value, seed)
    log.info("Running {} trials on {} thread(s)", count, workers)
    started = time.perf_counter()
    if workers == 1:
        records = [run_trial(check_id, k, s, instance_spec, ctx) for k, s in enumerate(seeds)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(run_trial, check_id, k, s, instance_spec, ctx)
                for k, s in enumerate(seeds)
            ]
            records = [f.result() for f in futures]
    elapsed_ms = (time.perf_counter() - started) * 1000.0

    report = CheckReport(
        check=check_id,
        records=sorted(records, key=lambda r: r.trial),
        informational=check_id in INFORMATIONAL,
        runtime_ms=elapsed_ms if settings.harness.record_runtime else None,
    )
    log.info(
        "{} trials, {} violation(s), {} error(s)",
        report.trials,
        report.violations,
        report.errors,
    )
    return report
