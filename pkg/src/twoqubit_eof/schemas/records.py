"""Records written to standard output, one JSON object per line."""

from __future__ import annotations

from typing import Annotated

from pydantic import BaseModel, Field, PlainSerializer, model_validator

from twoqubit_eof.config import get_settings
from twoqubit_eof.oracle.verify import VerificationReport
from twoqubit_eof.quantum.measures import calE

# Records must satisfy eof = E(concurrence) this closely
RECORD_CONSISTENCY_TOL = 1e-12


def round_significant(x: float) -> float:
    """Round to the configured number of significant digits."""
    return float(f"{x:.{get_settings().output_digits}g}")


Sig = Annotated[float, PlainSerializer(round_significant, return_type=float)]


class MemberRecord(BaseModel):
    """One pure state of a decomposition, amplitudes as [re, im] pairs."""

    amplitudes: list[tuple[Sig, Sig]]
    probability: Sig
    concurrence: Sig


class DecompositionRecord(BaseModel):
    """Optimal ensemble plus the checks a reader can rerun."""

    source: str
    members: list[MemberRecord] = Field(min_length=1, max_length=4)
    reconstruction_residual: Sig
    average_entanglement: Sig


class ConcurrenceRecord(BaseModel):
    label: str
    concurrence: Sig
    lambdas: list[Sig] = Field(min_length=4, max_length=4)
    rank: int = Field(ge=1, le=4)


class ResultRecord(ConcurrenceRecord):
    """Concurrence, entanglement of formation and optionally the optimal ensemble."""

    eof: Sig
    decomposition: DecompositionRecord | None = None

    @model_validator(mode="after")
    def _check_consistency(self) -> ResultRecord:
        expected = calE(self.concurrence)
        if abs(self.eof - expected) > RECORD_CONSISTENCY_TOL:
            raise ValueError(f"eof {self.eof!r} does not match E(C) = {expected!r}")
        return self


class VerifyRecord(BaseModel):
    label: str
    passed: bool
    report: VerificationReport


class BenchSummary(BaseModel):
    """Timing of one benchmark stage."""

    stage: str
    count: int
    seconds: float
    mean_seconds: float
    per_second: float
