"""Pydantic models for matrix files and emitted records."""

from twoqubit_eof.schemas.matrix_file import (
    LabeledMatrix,
    MatrixFile,
    ParsedEntry,
    dump_matrix_file,
    parse_entries,
    read_matrix_file,
    to_matrix_file,
    write_matrix_file,
)
from twoqubit_eof.schemas.records import (
    BenchSummary,
    ConcurrenceRecord,
    DecompositionRecord,
    MemberRecord,
    ResultRecord,
    VerifyRecord,
)

__all__ = [
    "BenchSummary",
    "ConcurrenceRecord",
    "DecompositionRecord",
    "LabeledMatrix",
    "MatrixFile",
    "MemberRecord",
    "ParsedEntry",
    "ResultRecord",
    "VerifyRecord",
    "dump_matrix_file",
    "parse_entries",
    "read_matrix_file",
    "to_matrix_file",
    "write_matrix_file",
]
