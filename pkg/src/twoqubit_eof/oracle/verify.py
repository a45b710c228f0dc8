"""Brute-force check of the closed-form entanglement of formation for one rho."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from functools import reduce

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from twoqubit_eof.config import get_settings
from twoqubit_eof.decomposition.optimal import optimal_decomposition
from twoqubit_eof.exceptions import FormulaViolation
from twoqubit_eof.oracle.averages import average_concurrence_of, average_entanglement_of
from twoqubit_eof.oracle.sampling import member_cycle, random_decomposition
from twoqubit_eof.quantum.measures import calE, concurrence_mixed
from twoqubit_eof.quantum.states import DensityMatrix

logger = logging.getLogger(__name__)

# Constructed optimal ensemble must reproduce E(C(rho)) this closely
CONSTRUCTED_TOL = 1e-8
# Sampled averages may undercut the formula by at most this much
LOWER_BOUND_TOL = 1e-9


class VerificationReport(BaseModel):
    """Result of verify_formula for a single density matrix."""

    model_config = ConfigDict(frozen=True)

    formula_value: float
    formula_concurrence: float
    constructed_avg_entanglement: float
    min_sampled_avg_entanglement: float
    min_sampled_avg_concurrence: float
    samples: int
    violations: int = Field(ge=0)
    constructed_ok: bool

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.constructed_ok


class VerificationSummary(BaseModel):
    """Aggregate of many reports; ``combine`` is commutative and associative."""

    model_config = ConfigDict(frozen=True)

    reports: int = 0
    passed: int = 0
    failed: int = 0
    total_samples: int = 0
    total_violations: int = 0
    max_constructed_gap: float = 0.0
    min_sampled_margin: float = float("inf")

    @classmethod
    def of(cls, report: VerificationReport) -> VerificationSummary:
        margin = min(
            report.min_sampled_avg_entanglement - report.formula_value,
            report.min_sampled_avg_concurrence - report.formula_concurrence,
        )
        return cls(
            reports=1,
            passed=int(report.passed),
            failed=int(not report.passed),
            total_samples=report.samples,
            total_violations=report.violations,
            max_constructed_gap=abs(report.constructed_avg_entanglement - report.formula_value),
            min_sampled_margin=margin,
        )

    def combine(self, other: VerificationSummary) -> VerificationSummary:
        return VerificationSummary(
            reports=self.reports + other.reports,
            passed=self.passed + other.passed,
            failed=self.failed + other.failed,
            total_samples=self.total_samples + other.total_samples,
            total_violations=self.total_violations + other.total_violations,
            max_constructed_gap=max(self.max_constructed_gap, other.max_constructed_gap),
            min_sampled_margin=min(self.min_sampled_margin, other.min_sampled_margin),
        )


def merge_reports(reports: Iterable[VerificationReport]) -> VerificationSummary:
    """Fold reports into one summary; order does not matter."""
    return reduce(
        VerificationSummary.combine,
        (VerificationSummary.of(r) for r in reports),
        VerificationSummary(),
    )


def verify_formula(
    rho: DensityMatrix,
    samples: int | None = None,
    seed: int | None = None,
    max_members: int | None = None,
) -> VerificationReport:
    """Compare E(C(rho)) against the constructed ensemble and random decompositions.

    Sample k uses m = rank + (k mod (max_members - rank + 1)) members and the
    k-th generator of the seed's stream.

    Raises:
        FormulaViolation: carrying the report, if the constructed ensemble misses
            the formula or any sample undercuts it
    """
    settings = get_settings()
    samples = settings.verify_samples if samples is None else samples
    seed = settings.seed if seed is None else seed
    max_members = settings.sample_max_members if max_members is None else max_members
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")

    c = concurrence_mixed(rho)
    e = calE(c)
    constructed = average_entanglement_of(optimal_decomposition(rho).vectors)

    rank = rho.rank
    entanglements = np.empty(samples)
    concurrences = np.empty(samples)
    for k in range(samples):
        dec = random_decomposition(rho, member_cycle(rank, k, max_members), seed, index=k)
        entanglements[k] = average_entanglement_of(dec.vectors)
        concurrences[k] = average_concurrence_of(dec.vectors)

    below = (entanglements < e - LOWER_BOUND_TOL) | (concurrences < c - LOWER_BOUND_TOL)
    report = VerificationReport(
        formula_value=e,
        formula_concurrence=c,
        constructed_avg_entanglement=constructed,
        min_sampled_avg_entanglement=float(entanglements.min()),
        min_sampled_avg_concurrence=float(concurrences.min()),
        samples=samples,
        violations=int(below.sum()),
        constructed_ok=abs(constructed - e) <= CONSTRUCTED_TOL,
    )
    logger.debug(
        f"Verified rho: E={e:.12g}, constructed={constructed:.12g}, "
        f"min sampled={report.min_sampled_avg_entanglement:.12g}"
    )
    if not report.passed:
        raise FormulaViolation(report)
    return report
