"""Pure-state decompositions of rho as lists of subnormalized vectors.

Every decomposition {w_i} of rho satisfies rho = sum_i |w_i><w_i|, and every one
arises from the subnormalized eigenvectors v_j of rho as w_i = sum_j U*_ij v_j
for some m x n matrix U with orthonormal columns.
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import Any

import numpy as np
from pydantic import field_validator

from twoqubit_eof.config import MAX_MEMBERS
from twoqubit_eof.exceptions import NotIsometry, NotSymmetric
from twoqubit_eof.linalg.takagi import takagi
from twoqubit_eof.linalg.types import ArrayModel, ComplexMatrix, frozen_array
from twoqubit_eof.quantum.measures import LambdaSpectrum
from twoqubit_eof.quantum.states import DensityMatrix, PureState, spin_flip_matrix, tilde_products

logger = logging.getLogger(__name__)

ISOMETRY_TOL = 1e-10
GRAM_SYMMETRY_TOL = 1e-12


class DecompositionSource(str, Enum):
    """Which construction produced a decomposition."""

    EIGEN = "eigen"
    TILDE_ORTHOGONAL = "tilde_orthogonal"
    PHASE_ADJUSTED = "phase_adjusted"
    OPTIMAL = "optimal"
    ZERO_CONCURRENCE = "zero_concurrence"
    SAMPLED = "sampled"


class Decomposition(ArrayModel):
    """Ordered subnormalized members w_i, stored as the rows of ``vectors``."""

    vectors: np.ndarray
    source: DecompositionSource

    @field_validator("vectors", mode="before")
    @classmethod
    def _check_vectors(cls, v: Any) -> np.ndarray:
        arr = np.asarray(v, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[1] != 4:
            raise ValueError(f"members must be rows of 4 amplitudes, got shape {arr.shape}")
        if not 1 <= arr.shape[0] <= MAX_MEMBERS:
            raise ValueError(f"decomposition needs 1..{MAX_MEMBERS} members, got {arr.shape[0]}")
        return frozen_array(arr)

    @property
    def size(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def members(self) -> list[PureState]:
        return [PureState(amplitudes=row) for row in self.vectors]

    @property
    def probabilities(self) -> np.ndarray:
        return np.einsum("ij,ij->i", self.vectors.conj(), self.vectors).real

    def density_matrix(self) -> ComplexMatrix:
        """sum_i |w_i><w_i|."""
        return self.vectors.T @ self.vectors.conj()

    def reconstruction_error(self, rho: DensityMatrix) -> float:
        """Frobenius norm of sum_i |w_i><w_i| - rho."""
        return float(np.linalg.norm(self.density_matrix() - rho.matrix))

    def preconcurrences(self) -> np.ndarray:
        """c(w_i) for every member (complex; zero-norm members give 0)."""
        diag = np.diagonal(tilde_products(self.vectors))
        p = self.probabilities
        safe = np.where(p > 0.0, p, 1.0)
        return np.where(p > 0.0, diag / safe, 0.0)


class TildeGram(ArrayModel):
    """Symmetric matrix of tilde inner products <a_i|a~_j>."""

    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def _check_entries(cls, v: Any) -> np.ndarray:
        arr = np.asarray(v, dtype=np.complex128)
        scale = 1.0 + float(np.abs(arr).max(initial=0.0))
        if arr.ndim != 2 or np.abs(arr - arr.T).max(initial=0.0) > GRAM_SYMMETRY_TOL * scale:
            raise NotSymmetric("tilde Gram matrix must be square and symmetric")
        return frozen_array(arr)


def tilde_gram(dec: Decomposition) -> TildeGram:
    return TildeGram(entries=tilde_products(dec.vectors))


def average_preconcurrence(dec: Decomposition) -> complex:
    """sum_i <w_i|w~_i>, the probability-weighted mean preconcurrence."""
    return complex(np.trace(tilde_products(dec.vectors)))


def eigen_ensemble(rho: DensityMatrix) -> Decomposition:
    """Subnormalized eigenvectors of rho, one per nonzero eigenvalue, descending."""
    return Decomposition(vectors=rho.subnormalized_eigenvectors(), source=DecompositionSource.EIGEN)


def apply_mixing(
    dec: Decomposition,
    u: ComplexMatrix,
    source: DecompositionSource | None = None,
) -> Decomposition:
    """w_i = sum_j U*_ij v_j for an m x n matrix U with orthonormal columns.

    Raises:
        NotIsometry: if U has the wrong number of columns or is not an isometry
    """
    u = np.asarray(u, dtype=np.complex128)
    if u.ndim != 2 or u.shape[1] != dec.size:
        raise NotIsometry(f"mixing matrix shape {u.shape} does not act on {dec.size} members")
    if u.shape[0] > MAX_MEMBERS:
        raise NotIsometry(f"mixing matrix has {u.shape[0]} rows, more than {MAX_MEMBERS}")
    defect = float(np.abs(u.conj().T @ u - np.eye(dec.size)).max())
    if defect > ISOMETRY_TOL:
        raise NotIsometry(f"columns are not orthonormal (defect {defect:.3e})")
    return Decomposition(vectors=u.conj() @ dec.vectors, source=source or dec.source)


def tilde_orthogonal_with_spectrum(rho: DensityMatrix) -> tuple[Decomposition, LambdaSpectrum]:
    """Tilde-orthogonal ensemble together with the lambdas it realizes."""
    eig = eigen_ensemble(rho)
    factor = takagi(tilde_products(eig.vectors))
    x = apply_mixing(eig, factor.u, source=DecompositionSource.TILDE_ORTHOGONAL)
    lambdas = np.zeros(4)
    lambdas[: eig.size] = factor.singular_values
    return x, LambdaSpectrum(lambdas=lambdas, rank=eig.size)


def tilde_orthogonal_ensemble(rho: DensityMatrix) -> Decomposition:
    """Members x_i with <x_i|x~_j> = lambda_i delta_ij, lambda descending."""
    x, _ = tilde_orthogonal_with_spectrum(rho)
    return x


def phase_adjusted_ensemble(x: Decomposition) -> Decomposition:
    """y_1 = x_1 and y_j = i x_j for j > 1, so that sum_i <y_i|y~_i> = C(rho)."""
    phases = np.full(x.size, 1.0j)
    phases[0] = 1.0
    return Decomposition(
        vectors=phases[:, None] * x.vectors, source=DecompositionSource.PHASE_ADJUSTED
    )


def right_eigen_residual(x: Decomposition, rho: DensityMatrix) -> float:
    """max_i |rho rho~ x_i - lambda_i^2 x_i| for a tilde-orthogonal ensemble."""
    product = rho.matrix @ spin_flip_matrix(rho.matrix)
    lambdas = np.diagonal(tilde_products(x.vectors)).real
    residual = x.vectors @ product.T - (lambdas**2)[:, None] * x.vectors
    return float(np.linalg.norm(residual, axis=1).max())
