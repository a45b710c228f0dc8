"""Hermitian eigendecomposition and PSD square root for n <= 4."""

import logging

import numpy as np
from pydantic import field_validator

from twoqubit_eof.exceptions import NonHermitianInput, NotPositive
from twoqubit_eof.linalg.types import ArrayModel, ComplexMatrix, as_complex_matrix, frozen_array

logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-10
# Eigenvalues in [-NEGATIVE_REJECT_TOL, 0) are roundoff and clamp to zero
NEGATIVE_CLAMP_TOL = 1e-10
NEGATIVE_REJECT_TOL = 1e-8


class HermitianEig(ArrayModel):
    """Eigenvalues (descending) and orthonormal eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @field_validator("eigenvalues")
    @classmethod
    def _freeze_values(cls, v: np.ndarray) -> np.ndarray:
        return frozen_array(v, np.float64)

    @field_validator("eigenvectors")
    @classmethod
    def _freeze_vectors(cls, v: np.ndarray) -> np.ndarray:
        return frozen_array(v)

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    def reconstruct(self) -> ComplexMatrix:
        """Return Q diag(eigenvalues) Q^dagger."""
        q = self.eigenvectors
        return (q * self.eigenvalues) @ q.conj().T


def hermitian_defect(h: ComplexMatrix) -> tuple[float, tuple[int, int]]:
    """Largest |h - h^dagger| entry and its (row, column)."""
    diff = np.abs(h - h.conj().T)
    flat = int(np.argmax(diff))
    row, col = divmod(flat, h.shape[0])
    return float(diff[row, col]), (row, col)


def herm_eig(h: ComplexMatrix) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix with eigenvalues sorted descending.

    The input is symmetrized before the solve. Ties keep their original order
    (stable sort), so identical inputs give identical outputs.

    Raises:
        NonHermitianInput: if h deviates from h^dagger by more than 1e-10
    """
    h = as_complex_matrix(h)
    defect, where = hermitian_defect(h)
    if defect > HERMITIAN_TOL * (1.0 + float(np.abs(h).max())):
        raise NonHermitianInput(f"matrix not Hermitian: |h - h^dagger| = {defect:.3e} at {where}")

    h = 0.5 * (h + h.conj().T)
    w, q = np.linalg.eigh(h)
    order = np.argsort(-w, kind="stable")
    return HermitianEig(eigenvalues=w[order], eigenvectors=q[:, order])


def sqrt_psd(p: ComplexMatrix, floor: float = 0.0) -> ComplexMatrix:
    """Hermitian PSD square root.

    Eigenvalues at or below ``floor`` (and roundoff negatives) are set to zero
    before the square root.

    Raises:
        NotPositive: if an eigenvalue is below -1e-8
    """
    eig = herm_eig(p)
    w = eig.eigenvalues
    if w[-1] < -NEGATIVE_REJECT_TOL:
        raise NotPositive(f"matrix has eigenvalue {w[-1]:.3e} < 0")
    if w[-1] < -NEGATIVE_CLAMP_TOL:
        logger.debug(f"Clamping eigenvalue {w[-1]:.3e} to zero")

    w = np.where(w > max(floor, 0.0), w, 0.0)
    q = eig.eigenvectors
    s = (q * np.sqrt(w)) @ q.conj().T
    return 0.5 * (s + s.conj().T)
