"""JSON matrix files: labeled 4x4 complex matrices with [re, im] entries.

Structure::

    {
      "basis": "up-up, up-down, down-up, down-down",
      "matrices": [{"label": "singlet", "entries": [[[0, 0], ...], ...]}, ...]
    }

The file as a whole is validated by pydantic; each matrix is converted on its
own so one bad entry does not hide the others.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ValidationError, field_validator

from twoqubit_eof.config import BASIS_DECLARATION
from twoqubit_eof.exceptions import InvalidDensityMatrix, MatrixFileError, StateError
from twoqubit_eof.quantum.states import DensityMatrix

logger = logging.getLogger(__name__)

# --normalize accepts traces in this range
NORMALIZE_RANGE = (0.9, 1.1)


class LabeledMatrix(BaseModel):
    """One matrix of a file; entries are checked when converted."""

    label: str
    entries: list[Any]

    def to_array(self) -> np.ndarray:
        """Convert entries to a 4x4 complex array.

        Raises:
            InvalidDensityMatrix: with the (row, column) of the first bad entry
        """
        if len(self.entries) != 4:
            raise InvalidDensityMatrix(f"expected 4 rows, got {len(self.entries)}")
        out = np.zeros((4, 4), dtype=np.complex128)
        for i, row in enumerate(self.entries):
            if not isinstance(row, list) or len(row) != 4:
                raise InvalidDensityMatrix(f"row {i} must hold 4 entries", (i, 0))
            for j, entry in enumerate(row):
                out[i, j] = _parse_entry(entry, (i, j))
        return out

    @classmethod
    def from_matrix(cls, label: str, matrix: np.ndarray) -> LabeledMatrix:
        entries = [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(matrix)]
        return cls(label=label, entries=entries)


def _parse_entry(entry: Any, location: tuple[int, int]) -> complex:
    if (
        not isinstance(entry, list)
        or len(entry) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
    ):
        raise InvalidDensityMatrix(
            f"entry must be a [re, im] pair of numbers, got {entry!r}", location
        )
    re, im = float(entry[0]), float(entry[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise InvalidDensityMatrix("entry is not finite", location)
    return complex(re, im)


class MatrixFile(BaseModel):
    """A list of labeled density matrices in the fixed product basis."""

    basis: str = BASIS_DECLARATION
    matrices: list[LabeledMatrix]

    @field_validator("basis")
    @classmethod
    def _check_basis(cls, v: str) -> str:
        if v.strip() != BASIS_DECLARATION:
            raise ValueError(f"basis must be {BASIS_DECLARATION!r}, got {v!r}")
        return v.strip()


class ParsedEntry(BaseModel):
    """Outcome of converting one LabeledMatrix into a DensityMatrix."""

    index: int
    label: str
    rho: DensityMatrix | None = None
    error: str | None = None
    location: tuple[int, int] | None = None

    @property
    def ok(self) -> bool:
        return self.rho is not None

    def describe(self) -> str:
        where = f" at (row {self.location[0]}, col {self.location[1]})" if self.location else ""
        return f"matrix {self.index} ({self.label}){where}: {self.error}"


def _renormalize(matrix: np.ndarray) -> np.ndarray:
    trace = complex(np.trace(matrix))
    low, high = NORMALIZE_RANGE
    if abs(trace.imag) > 1e-10 or not low <= trace.real <= high:
        raise InvalidDensityMatrix(
            f"trace {trace.real:.6g} outside [{low}, {high}], refusing to normalize"
        )
    return matrix / trace.real


def parse_entries(file: MatrixFile, normalize: bool = False) -> list[ParsedEntry]:
    """Convert every matrix of file, keeping failures as diagnostics."""
    parsed = []
    for index, item in enumerate(file.matrices):
        try:
            matrix = item.to_array()
            if normalize:
                matrix = _renormalize(matrix)
            rho = DensityMatrix(matrix=matrix)
            parsed.append(ParsedEntry(index=index, label=item.label, rho=rho))
        except StateError as e:
            location = e.location if isinstance(e, InvalidDensityMatrix) else None
            parsed.append(
                ParsedEntry(index=index, label=item.label, error=str(e), location=location)
            )
    return parsed


def read_matrix_file(path: Path | str) -> MatrixFile:
    """Load and structurally validate a matrix file.

    Raises:
        MatrixFileError: if the file is missing, not JSON, or lacks the expected structure
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise MatrixFileError(f"cannot read {path}: {e}") from e
    try:
        return MatrixFile.model_validate_json(text)
    except ValidationError as e:
        raise MatrixFileError(f"{path} is not a valid matrix file: {e}") from e


def to_matrix_file(matrices: Sequence[DensityMatrix], labels: Sequence[str]) -> MatrixFile:
    return MatrixFile(
        matrices=[
            LabeledMatrix.from_matrix(label, rho.matrix)
            for label, rho in zip(labels, matrices, strict=True)
        ]
    )


def dump_matrix_file(file: MatrixFile) -> str:
    """Serialize with shortest round-trip floats, so output is value- and byte-stable."""
    return file.model_dump_json(indent=1) + "\n"


def write_matrix_file(path: Path | str, file: MatrixFile) -> None:
    Path(path).write_text(dump_matrix_file(file), encoding="utf-8")
    logger.info(f"Wrote {len(file.matrices)} matrices to {path}")
