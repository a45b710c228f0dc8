"""Batch service - runs one computation over every matrix of a file.

Every entry is processed even when others fail; failures are collected and
logged, and results come back in input order whatever the thread count.
"""

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Any, TypeVar

import numpy as np
from pydantic import BaseModel

from twoqubit_eof.decomposition.optimal import optimal_decomposition
from twoqubit_eof.exceptions import EntanglementError, FormulaViolation
from twoqubit_eof.oracle.averages import average_entanglement
from twoqubit_eof.oracle.verify import verify_formula
from twoqubit_eof.quantum.measures import calE, lambda_spectrum
from twoqubit_eof.quantum.states import DensityMatrix
from twoqubit_eof.schemas.matrix_file import ParsedEntry
from twoqubit_eof.schemas.records import (
    ConcurrenceRecord,
    DecompositionRecord,
    MemberRecord,
    ResultRecord,
    VerifyRecord,
)

logger = logging.getLogger(__name__)

R = TypeVar("R", bound=BaseModel)


class BatchFailure(BaseModel):
    """A matrix that produced no record (or a failed check)."""

    index: int
    label: str
    message: str
    violation: bool = False


class BatchResult(BaseModel):
    records: list[Any]
    failures: list[BatchFailure]

    @property
    def has_violation(self) -> bool:
        return any(f.violation for f in self.failures)


def concurrence_record(label: str, rho: DensityMatrix) -> ConcurrenceRecord:
    spectrum = lambda_spectrum(rho)
    return ConcurrenceRecord(
        label=label,
        concurrence=spectrum.concurrence,
        lambdas=spectrum.lambdas.tolist(),
        rank=spectrum.rank,
    )


def eof_record(label: str, rho: DensityMatrix) -> ResultRecord:
    spectrum = lambda_spectrum(rho)
    c = spectrum.concurrence
    return ResultRecord(
        label=label,
        concurrence=c,
        eof=calE(c),
        lambdas=spectrum.lambdas.tolist(),
        rank=spectrum.rank,
    )


def decompose_record(label: str, rho: DensityMatrix) -> ResultRecord:
    """eof_record plus the optimal ensemble and its self-check."""
    base = eof_record(label, rho)
    dec = optimal_decomposition(rho)
    concurrences = np.abs(dec.preconcurrences())
    members = [
        MemberRecord(
            amplitudes=[(float(z.real), float(z.imag)) for z in row],
            probability=float(p),
            concurrence=float(c),
        )
        for row, p, c in zip(dec.vectors, dec.probabilities, concurrences, strict=True)
    ]
    decomposition = DecompositionRecord(
        source=dec.source.value,
        members=members,
        reconstruction_residual=dec.reconstruction_error(rho),
        average_entanglement=average_entanglement(dec),
    )
    return base.model_copy(update={"decomposition": decomposition})


def make_verify_record(
    samples: int | None, seed: int | None
) -> Callable[[str, DensityMatrix], VerifyRecord]:
    """Verification worker; a formula violation still yields its record."""

    def worker(label: str, rho: DensityMatrix) -> VerifyRecord:
        try:
            report = verify_formula(rho, samples=samples, seed=seed)
        except FormulaViolation as e:
            logger.error(f"Formula violation for {label}: {e}")
            return VerifyRecord(label=label, passed=False, report=e.report)
        return VerifyRecord(label=label, passed=True, report=report)

    return worker


def run_batch(
    entries: Sequence[ParsedEntry],
    worker: Callable[[str, DensityMatrix], R],
    threads: int = 1,
) -> BatchResult:
    """Apply worker to every parsed matrix; parse failures pass through as failures."""
    failures = [
        BatchFailure(index=e.index, label=e.label, message=e.describe())
        for e in entries
        if not e.ok
    ]
    valid = [e for e in entries if e.ok]

    def safe(entry: ParsedEntry) -> R | BatchFailure:
        try:
            return worker(entry.label, entry.rho)
        except EntanglementError as e:
            logger.debug(f"Failed on matrix {entry.index} ({entry.label})", exc_info=True)
            message = f"matrix {entry.index} ({entry.label}): {e}"
            return BatchFailure(index=entry.index, label=entry.label, message=message)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(safe, valid))
    else:
        outcomes = [safe(e) for e in valid]

    records: list[R] = []
    for entry, outcome in zip(valid, outcomes, strict=True):
        if isinstance(outcome, BatchFailure):
            failures.append(outcome)
            continue
        records.append(outcome)
        if isinstance(outcome, VerifyRecord) and not outcome.passed:
            failures.append(
                BatchFailure(
                    index=entry.index,
                    label=entry.label,
                    message=(
                        f"matrix {entry.index} ({entry.label}): "
                        f"{outcome.report.violations} violation(s)"
                    ),
                    violation=True,
                )
            )

    failures.sort(key=lambda f: f.index)
    for failure in failures:
        logger.warning(failure.message)
    logger.info(
        f"Processed {len(entries)} matrices: {len(records)} records, {len(failures)} failed"
    )
    return BatchResult(records=records, failures=failures)
