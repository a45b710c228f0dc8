"""Services package."""

from twoqubit_eof.services.batch import (
    BatchFailure,
    BatchResult,
    concurrence_record,
    decompose_record,
    eof_record,
    make_verify_record,
    run_batch,
)
from twoqubit_eof.services.bench import run_bench

__all__ = [
    "BatchFailure",
    "BatchResult",
    "concurrence_record",
    "decompose_record",
    "eof_record",
    "make_verify_record",
    "run_batch",
    "run_bench",
]
