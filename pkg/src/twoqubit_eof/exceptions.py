"""Error hierarchy.

None of these derive from ValueError, so they pass through pydantic
validators unchanged instead of becoming ValidationError.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from twoqubit_eof.oracle.verify import VerificationReport


class EntanglementError(Exception):
    """Base class for all errors raised by twoqubit_eof."""


# linalg-core


class LinalgError(EntanglementError):
    """Invalid input to a small dense linear algebra routine."""


class NonHermitianInput(LinalgError):
    """Matrix is not Hermitian within tolerance."""


class NotPositive(LinalgError):
    """Matrix has an eigenvalue that is negative beyond roundoff."""


class NotSymmetric(LinalgError):
    """Matrix is not complex symmetric (tau != tau^T) within tolerance."""


# quantum-core


class StateError(EntanglementError):
    """Invalid quantum state."""


class NotNormalized(StateError):
    """Pure state is required to be normalized."""


class ZeroNorm(StateError):
    """Pure state has (numerically) zero norm."""


class OutOfRange(StateError):
    """Scalar argument lies outside its domain."""


class InvalidDensityMatrix(StateError):
    """Matrix fails the density-matrix invariants.

    Args:
        message: Human readable reason
        location: Optional (row, column) of the offending entry
    """

    def __init__(self, message: str, location: tuple[int, int] | None = None) -> None:
        super().__init__(message)
        self.location = location


# decomposition


class DecompositionError(EntanglementError):
    """Failure while building or transforming a decomposition."""


class NotIsometry(DecompositionError):
    """Mixing matrix does not have orthonormal columns of the right size."""


class TargetUnreachable(DecompositionError):
    """Preconcurrence equalization could not reach its target."""


class NoClosure(DecompositionError):
    """No phases close the polygon because lambda_1 >= lambda_2 + lambda_3 + lambda_4."""


class WrongCase(DecompositionError):
    """Construction was called for the wrong sign of lambda_1 - lambda_2 - lambda_3 - lambda_4."""


# oracle


class OracleError(EntanglementError):
    """Failure inside the brute-force verification oracle."""


class TooFewMembers(OracleError):
    """Requested decomposition size is smaller than the rank."""


class TooManyMembers(OracleError):
    """Requested decomposition size exceeds the hard cap of sixteen."""


class FormulaViolation(OracleError):
    """A sampled or constructed decomposition contradicts the closed form."""

    def __init__(self, report: VerificationReport) -> None:
        super().__init__(
            f"{report.violations} violation(s); formula={report.formula_value:.15g}, "
            f"constructed={report.constructed_avg_entanglement:.15g}"
        )
        self.report = report


# cli


class MatrixFileError(EntanglementError):
    """Input file cannot be read or does not have the matrix-file structure."""
