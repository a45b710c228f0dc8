"""Concurrence, the E(C) function, the lambda spectrum and entanglement of formation."""

from __future__ import annotations

import logging
import math

import numpy as np
from pydantic import field_validator, model_validator
from scipy.special import entr

from twoqubit_eof.config import get_settings
from twoqubit_eof.exceptions import InvalidDensityMatrix, NotNormalized, OutOfRange, ZeroNorm
from twoqubit_eof.linalg.hermitian import herm_eig, sqrt_psd
from twoqubit_eof.linalg.takagi import takagi
from twoqubit_eof.linalg.types import ArrayModel, ComplexMatrix, frozen_array
from twoqubit_eof.quantum.states import (
    RANK_TOL,
    ZERO_NORM_TOL,
    DensityMatrix,
    PureState,
    spin_flip_matrix,
    tilde_inner,
    tilde_products,
)

logger = logging.getLogger(__name__)

NORMALIZATION_TOL = 1e-10
CONCURRENCE_SLACK = 1e-12
# Tolerated disagreement between the Takagi route and the R route
ROUTE_AGREEMENT_TOL = 1e-9
# Eigenvalues of sqrt(rho) rho~ sqrt(rho) at or below this are roundoff
SPECTRUM_FLOOR = 1e-15
LAMBDA_ORDER_TOL = 1e-12

LN2 = math.log(2.0)


class LambdaSpectrum(ArrayModel):
    """Descending lambda_1..lambda_4 and the rank of rho.

    The lambdas are the square roots of the eigenvalues of rho rho~.
    """

    lambdas: np.ndarray
    rank: int

    @field_validator("lambdas", mode="before")
    @classmethod
    def _check_lambdas(cls, v: np.ndarray) -> np.ndarray:
        arr = np.asarray(v, dtype=np.float64)
        if arr.shape != (4,):
            raise ValueError(f"expected 4 lambdas, got shape {arr.shape}")
        if np.any(arr < 0.0) or np.any(np.diff(arr) > LAMBDA_ORDER_TOL):
            raise ValueError(f"lambdas must be non-negative and descending: {arr}")
        return frozen_array(arr, np.float64)

    @model_validator(mode="after")
    def _check_rank(self) -> LambdaSpectrum:
        if not 1 <= self.rank <= 4:
            raise ValueError(f"rank {self.rank} outside 1..4")
        return self

    @property
    def difference(self) -> float:
        """lambda_1 - lambda_2 - lambda_3 - lambda_4 (may be negative)."""
        lam = self.lambdas
        return float(lam[0] - lam[1] - lam[2] - lam[3])

    @property
    def concurrence(self) -> float:
        return min(1.0, max(0.0, self.difference))


def _require_normalized(psi: PureState) -> None:
    if abs(psi.norm_squared - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized(f"state must be normalized, norm^2 = {psi.norm_squared!r}")


def concurrence_pure(psi: PureState) -> float:
    """C(psi) = |<psi|psi~>| for a normalized state."""
    _require_normalized(psi)
    return abs(tilde_inner(psi, psi))


def preconcurrence(psi: PureState) -> complex:
    """c(psi) = <psi|psi~> / <psi|psi>, defined for subnormalized states."""
    n2 = psi.norm_squared
    if n2 <= ZERO_NORM_TOL:
        raise ZeroNorm(f"preconcurrence undefined for norm^2 {n2:.3e}")
    return tilde_inner(psi, psi) / n2


def binary_entropy_bits(p: np.ndarray) -> np.ndarray:
    """Shannon entropy in bits of (p, 1 - p), with 0 log 0 = 0."""
    p = np.clip(p, 0.0, 1.0)
    return (entr(p) + entr(1.0 - p)) / LN2


def calE_array(c: np.ndarray) -> np.ndarray:
    """Vectorized E(C); values must already lie in [0, 1]."""
    c = np.clip(np.asarray(c, dtype=np.float64), 0.0, 1.0)
    x = 0.5 * (1.0 + np.sqrt(1.0 - c * c))
    return binary_entropy_bits(x)


def calE(c: float) -> float:
    """E(C) = h((1 + sqrt(1 - C^2)) / 2), h the binary entropy in bits.

    Raises:
        OutOfRange: if C lies outside [0, 1]
    """
    if not -CONCURRENCE_SLACK <= c <= 1.0 + CONCURRENCE_SLACK:
        raise OutOfRange(f"concurrence {c!r} outside [0, 1]")
    return float(calE_array(np.asarray(c)))


def reduced_states(psi: PureState) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Partial traces (rho_A, rho_B) of |psi><psi|."""
    m = psi.amplitudes.reshape(2, 2)
    rho_a = m @ m.conj().T
    rho_b = m.T @ m.conj()
    return rho_a, rho_b


def von_neumann_entropy(rho: ComplexMatrix) -> float:
    """-Tr(rho log2 rho) with eigenvalues clamped to [0, 1]."""
    w = np.clip(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)), 0.0, 1.0)
    return float(entr(w).sum() / LN2)


def entropy_of_entanglement(psi: PureState, subsystem: str = "A") -> float:
    """Entropy of the reduced state of a normalized pure state."""
    _require_normalized(psi)
    rho_a, rho_b = reduced_states(psi)
    if subsystem == "A":
        return von_neumann_entropy(rho_a)
    if subsystem == "B":
        return von_neumann_entropy(rho_b)
    raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")


def _as_density(rho: DensityMatrix) -> DensityMatrix:
    if not isinstance(rho, DensityMatrix):
        raise InvalidDensityMatrix(f"expected DensityMatrix, got {type(rho).__name__}")
    return rho


def _pad4(values: np.ndarray) -> np.ndarray:
    out = np.zeros(4)
    out[: len(values)] = values
    return out


def lambda_spectrum_r_route(rho: DensityMatrix) -> LambdaSpectrum:
    """Eigenvalues of R = sqrt(sqrt(rho) rho~ sqrt(rho))."""
    rho = _as_density(rho)
    root = sqrt_psd(rho.matrix, floor=RANK_TOL)
    inner = root @ spin_flip_matrix(rho.matrix) @ root
    r = sqrt_psd(inner, floor=SPECTRUM_FLOOR)
    lambdas = np.clip(herm_eig(r).eigenvalues, 0.0, None)
    return LambdaSpectrum(lambdas=np.sort(lambdas)[::-1], rank=rho.rank)


def lambda_spectrum_product_route(rho: DensityMatrix) -> np.ndarray:
    """Square roots of the eigenvalues of the non-Hermitian rho rho~, descending."""
    rho = _as_density(rho)
    mu = np.linalg.eigvals(rho.matrix @ spin_flip_matrix(rho.matrix)).real
    return np.sort(np.sqrt(np.clip(mu, 0.0, None)))[::-1]


def lambda_spectrum(rho: DensityMatrix) -> LambdaSpectrum:
    """Lambda spectrum via Takagi factorization of tau_ij = <v_i|v~_j>.

    v_i are the subnormalized eigenvectors of rho. When the settings enable the
    cross-check, the R route is evaluated too and a disagreement is logged.
    """
    rho = _as_density(rho)
    vectors = rho.subnormalized_eigenvectors()
    tau = tilde_products(vectors)
    spectrum = LambdaSpectrum(
        lambdas=_pad4(takagi(tau).singular_values), rank=vectors.shape[0]
    )

    if get_settings().spectrum_cross_check:
        other = lambda_spectrum_r_route(rho)
        gap = float(np.abs(other.lambdas - spectrum.lambdas).max())
        if gap > ROUTE_AGREEMENT_TOL:
            logger.warning(
                f"Lambda routes disagree by {gap:.3e}: takagi={spectrum.lambdas}, R={other.lambdas}"
            )
    return spectrum


def concurrence_mixed(rho: DensityMatrix) -> float:
    """C(rho) = max(0, lambda_1 - lambda_2 - lambda_3 - lambda_4)."""
    return lambda_spectrum(rho).concurrence


def eof(rho: DensityMatrix) -> float:
    """Entanglement of formation E(rho) = E(C(rho))."""
    return calE(concurrence_mixed(rho))
