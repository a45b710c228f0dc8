"""Two-qubit state types, the spin flip and the tilde inner product.

Basis order is fixed to (up-up, up-down, down-up, down-down); complex
conjugation in the spin flip is taken in this basis.
"""

from __future__ import annotations

import logging
from typing import Any

import numpy as np
from pydantic import field_validator, model_validator

from twoqubit_eof.exceptions import InvalidDensityMatrix, NotNormalized, OutOfRange, ZeroNorm
from twoqubit_eof.linalg.hermitian import HermitianEig, herm_eig, hermitian_defect
from twoqubit_eof.linalg.types import ArrayModel, ComplexMatrix, frozen_array

logger = logging.getLogger(__name__)

BASIS_LABELS = ("up-up", "up-down", "down-up", "down-down")

# sigma_y (x) sigma_y in the product basis; real and symmetric
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y).real.astype(np.complex128)
SIGMA_YY.setflags(write=False)

NORMALIZED_TOL = 1e-12
DENSITY_TOL = 1e-10
# Eigenvalues of rho below this (relative to the trace) do not count toward the rank
RANK_TOL = 1e-12
ZERO_NORM_TOL = 1e-14


class PureState(ArrayModel):
    """Possibly subnormalized two-qubit vector; norm squared is its probability weight."""

    amplitudes: np.ndarray
    normalized: bool = False

    @field_validator("amplitudes", mode="before")
    @classmethod
    def _check_amplitudes(cls, v: Any) -> np.ndarray:
        arr = np.asarray(v, dtype=np.complex128)
        if arr.shape != (4,):
            raise ValueError(f"two-qubit state needs 4 amplitudes, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("amplitudes must be finite")
        return frozen_array(arr)

    @model_validator(mode="after")
    def _check_normalized(self) -> PureState:
        if self.normalized and abs(self.norm_squared - 1.0) > NORMALIZED_TOL:
            raise NotNormalized(f"state flagged normalized has norm^2 {self.norm_squared!r}")
        return self

    @property
    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def normalize(self) -> PureState:
        """Return the unit vector along this state.

        Raises:
            ZeroNorm: if the state is (numerically) the zero vector
        """
        n2 = self.norm_squared
        if n2 <= ZERO_NORM_TOL:
            raise ZeroNorm(f"cannot normalize a state with norm^2 {n2:.3e}")
        return PureState(amplitudes=self.amplitudes / np.sqrt(n2), normalized=True)

    def scaled(self, factor: complex) -> PureState:
        return PureState(amplitudes=factor * self.amplitudes)

    def projector(self) -> ComplexMatrix:
        """Return |psi><psi| (trace = norm squared)."""
        return np.outer(self.amplitudes, self.amplitudes.conj())


def check_density_matrix(matrix: ComplexMatrix) -> None:
    """Raise InvalidDensityMatrix unless matrix is Hermitian, PSD and unit-trace."""
    if matrix.shape != (4, 4):
        raise InvalidDensityMatrix(f"density matrix must be 4x4, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        bad = np.argwhere(~np.isfinite(matrix))[0]
        raise InvalidDensityMatrix("non-finite entry", (int(bad[0]), int(bad[1])))

    defect, where = hermitian_defect(matrix)
    if defect > DENSITY_TOL:
        raise InvalidDensityMatrix(f"not Hermitian (|rho - rho^dagger| = {defect:.3e})", where)

    trace = complex(np.trace(matrix))
    if abs(trace - 1.0) > DENSITY_TOL:
        raise InvalidDensityMatrix(f"trace is {trace.real:.12g}, expected 1")

    lowest = float(herm_eig(matrix).eigenvalues[-1])
    if lowest < -DENSITY_TOL:
        raise InvalidDensityMatrix(f"not positive semidefinite (eigenvalue {lowest:.3e})")


class DensityMatrix(ArrayModel):
    """4x4 Hermitian, positive semidefinite, unit-trace matrix."""

    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def _check_matrix(cls, v: Any) -> np.ndarray:
        arr = np.asarray(v, dtype=np.complex128)
        check_density_matrix(arr)
        return frozen_array(arr)

    @classmethod
    def from_pure(cls, psi: PureState) -> DensityMatrix:
        """Projector onto the normalized psi."""
        return cls(matrix=psi.normalize().projector())

    def eigen(self) -> HermitianEig:
        """Hermitian eigendecomposition of rho, eigenvalues descending."""
        return herm_eig(self.matrix)

    def _rank_of(self, eig: HermitianEig) -> int:
        threshold = RANK_TOL * float(np.trace(self.matrix).real)
        return max(1, int(np.count_nonzero(eig.eigenvalues > threshold)))

    @property
    def rank(self) -> int:
        return self._rank_of(self.eigen())

    def subnormalized_eigenvectors(self) -> np.ndarray:
        """Rows v_i with <v_i|v_i> equal to the i-th nonzero eigenvalue, descending."""
        eig = self.eigen()
        n = self._rank_of(eig)
        w = np.clip(eig.eigenvalues[:n], 0.0, None)
        return (eig.eigenvectors[:, :n] * np.sqrt(w)).T

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


def basis_state(label: str) -> PureState:
    """Product basis state by label, e.g. ``"up-down"``."""
    amps = np.zeros(4, dtype=np.complex128)
    amps[BASIS_LABELS.index(label)] = 1.0
    return PureState(amplitudes=amps, normalized=True)


def bell_state(name: str) -> PureState:
    """One of ``phi+``, ``phi-``, ``psi+``, ``psi-`` (psi- is the singlet)."""
    r = 1.0 / np.sqrt(2.0)
    table = {
        "phi+": (r, 0.0, 0.0, r),
        "phi-": (r, 0.0, 0.0, -r),
        "psi+": (0.0, r, r, 0.0),
        "psi-": (0.0, r, -r, 0.0),
    }
    if name not in table:
        raise ValueError(f"unknown Bell state {name!r}")
    return PureState(amplitudes=table[name], normalized=True)


def singlet() -> PureState:
    """(|up-down> - |down-up>) / sqrt(2)."""
    return bell_state("psi-")


def maximally_mixed() -> DensityMatrix:
    return DensityMatrix(matrix=np.eye(4, dtype=np.complex128) / 4.0)


def werner(p: float) -> DensityMatrix:
    """p * singlet projector + (1 - p) * identity / 4."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"Werner weight p={p} outside [0, 1]")
    mixed = np.eye(4, dtype=np.complex128) / 4.0
    return DensityMatrix(matrix=p * singlet().projector() + (1.0 - p) * mixed)


def spin_flip_pure(psi: PureState) -> PureState:
    """(sigma_y (x) sigma_y) conj(psi)."""
    return PureState(amplitudes=SIGMA_YY @ psi.amplitudes.conj(), normalized=psi.normalized)


def spin_flip_matrix(matrix: ComplexMatrix) -> ComplexMatrix:
    """(sigma_y (x) sigma_y) conj(m) (sigma_y (x) sigma_y) on a raw matrix."""
    return SIGMA_YY @ matrix.conj() @ SIGMA_YY


def spin_flip_density(rho: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(matrix=spin_flip_matrix(rho.matrix))


def tilde_inner(a: PureState, b: PureState) -> complex:
    """<a|b~>; symmetric in a and b."""
    return complex(np.vdot(a.amplitudes, SIGMA_YY @ b.amplitudes.conj()))


def tilde_products(vectors: np.ndarray) -> ComplexMatrix:
    """Matrix of <v_i|v~_j> for the rows v_i of vectors."""
    vc = np.asarray(vectors, dtype=np.complex128).conj()
    return vc @ SIGMA_YY @ vc.T


def apply_local_unitaries(
    rho: DensityMatrix, ua: ComplexMatrix, ub: ComplexMatrix
) -> DensityMatrix:
    """(ua (x) ub) rho (ua (x) ub)^dagger."""
    u = np.kron(ua, ub)
    return DensityMatrix(matrix=u @ rho.matrix @ u.conj().T)
