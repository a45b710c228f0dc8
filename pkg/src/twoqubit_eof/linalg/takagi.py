"""Takagi (Autonne-Takagi) factorization of small complex symmetric matrices.

For symmetric tau we find a unitary U with U tau U^T = diag(s_1, ..., s_n),
s_i real, non-negative and descending. The s_i are the singular values of
tau, i.e. the square roots of the eigenvalues of tau tau^*.

Algorithm:
    1. Diagonalize the Hermitian matrix tau tau^* with a unitary U0.
    2. B = U0 tau U0^T commutes with diag(tau tau^*), so it is block diagonal
       over groups of (relatively) equal singular values.
    3. Blocks of a single repeated value s are s times a symmetric unitary S;
       with Q = sqrtm(S) (symmetric, unitary) the block unitary is Q^dagger.
       Blocks that still hold several distinct values are factored
       recursively.
    4. Values that are close but not merged leave coupling in U tau U^T that
       tau tau^* cannot resolve. Coupled indices are refactored from the real
       symmetric embedding [[X, Y], [Y, -X]] of the block X + iY, whose
       eigenvalues are +-s and whose top eigenvectors [p; q] give the columns
       p + iq of a Takagi unitary.
    5. Rotate each row of U by exp(-i phi / 2) so the diagonal is real and
       non-negative, then sort descending.
"""

import logging

import numpy as np
import scipy.linalg
from pydantic import field_validator
from scipy.sparse.csgraph import connected_components

from twoqubit_eof.exceptions import NotSymmetric
from twoqubit_eof.linalg.hermitian import herm_eig
from twoqubit_eof.linalg.types import ArrayModel, ComplexMatrix, as_complex_matrix, frozen_array

logger = logging.getLogger(__name__)

SYMMETRIC_TOL = 1e-10
# Singular values closer than this (relative to the largest) share a block
DEGENERACY_TOL = 1e-8
# Blocks this small relative to the whole matrix are treated as zero
ZERO_BLOCK_TOL = 1e-14
# Off-diagonal entries of U tau U^T above this (relative) trigger a refinement
COUPLING_TOL = 1e-12


class TakagiFactorization(ArrayModel):
    """Unitary u and descending non-negative singular values with u tau u^T = diag."""

    u: np.ndarray
    singular_values: np.ndarray

    @field_validator("u")
    @classmethod
    def _freeze_u(cls, v: np.ndarray) -> np.ndarray:
        return frozen_array(v)

    @field_validator("singular_values")
    @classmethod
    def _freeze_values(cls, v: np.ndarray) -> np.ndarray:
        return frozen_array(v, np.float64)

    def diagonal_form(self, tau: ComplexMatrix) -> ComplexMatrix:
        """Return u tau u^T (diagonal for the factored tau)."""
        return self.u @ tau @ self.u.T

    def reconstruct(self) -> ComplexMatrix:
        """Return u^dagger D conj(u), the factored tau."""
        return self.u.conj().T @ np.diag(self.singular_values) @ self.u.conj()


def _degenerate_groups(sigma: np.ndarray) -> list[list[int]]:
    """Split descending values into runs whose consecutive gaps are below tolerance."""
    tol = DEGENERACY_TOL * sigma[0]
    groups = [[0]]
    for k in range(1, len(sigma)):
        if sigma[k - 1] - sigma[k] > tol:
            groups.append([k])
        else:
            groups[-1].append(k)
    return groups


def _degenerate_block_unitary(block: ComplexMatrix, value: float) -> ComplexMatrix:
    """Unitary W with W block W^T = value * I for block = value * (symmetric unitary)."""
    s = block / value
    q = scipy.linalg.sqrtm(s)
    q = 0.5 * (q + q.T)
    w, _ = scipy.linalg.polar(q.conj().T)
    return w


def _embedded_block_unitary(block: ComplexMatrix) -> ComplexMatrix:
    """Takagi unitary of a block whose singular values are all well above zero."""
    k = block.shape[0]
    x, y = block.real, block.imag
    _, vecs = scipy.linalg.eigh(np.block([[x, y], [y, -x]]))
    top = vecs[:, k:]
    w = top[:k] + 1j * top[k:]
    return w.conj().T


def _refine_coupled(b: ComplexMatrix, tol: float) -> ComplexMatrix | None:
    """Unitary removing off-diagonal coupling from a nearly diagonal symmetric b."""
    coupling = np.abs(b - np.diag(np.diagonal(b)))
    if float(coupling.max()) <= tol:
        return None
    n_groups, labels = connected_components(coupling > tol, directed=False)
    r = np.eye(b.shape[0], dtype=np.complex128)
    for group in range(n_groups):
        idx = np.flatnonzero(labels == group)
        if len(idx) > 1:
            sub = np.ix_(idx, idx)
            r[sub] = _embedded_block_unitary(b[sub])
    logger.debug(f"Refined Takagi coupling {float(coupling.max()):.2e} over {n_groups} groups")
    return r


def _takagi_unitary(tau: ComplexMatrix, zero_scale: float) -> ComplexMatrix:
    """Unitary that diagonalizes tau by congruence, up to row phases."""
    dim = tau.shape[0]
    if dim == 1 or float(np.abs(tau).max()) <= zero_scale:
        return np.eye(dim, dtype=np.complex128)

    eig = herm_eig(tau @ tau.conj())
    sigma = np.sqrt(np.clip(eig.eigenvalues, 0.0, None))
    groups = _degenerate_groups(sigma)
    if len(groups) == 1:
        return _degenerate_block_unitary(tau, float(sigma.mean()))

    u0 = eig.eigenvectors.conj().T
    block = u0 @ tau @ u0.T
    inner = np.zeros((dim, dim), dtype=np.complex128)
    for idx in groups:
        sub = np.ix_(idx, idx)
        inner[sub] = _takagi_unitary(block[sub], zero_scale)
    return inner @ u0


def takagi(tau: ComplexMatrix) -> TakagiFactorization:
    """Takagi factorization of a complex symmetric matrix.

    Raises:
        NotSymmetric: if tau deviates from tau^T by more than 1e-10
    """
    tau = as_complex_matrix(tau)
    scale = float(np.abs(tau).max())
    defect = float(np.abs(tau - tau.T).max())
    if defect > SYMMETRIC_TOL * (1.0 + scale):
        raise NotSymmetric(f"matrix not symmetric: |tau - tau^T| = {defect:.3e}")
    tau = 0.5 * (tau + tau.T)

    u = _takagi_unitary(tau, ZERO_BLOCK_TOL * scale)
    r = _refine_coupled(u @ tau @ u.T, COUPLING_TOL * scale)
    if r is not None:
        u = r @ u
    d = np.diagonal(u @ tau @ u.T)
    u = u * np.exp(-0.5j * np.angle(d))[:, None]
    values = np.abs(d)

    order = np.argsort(-values, kind="stable")
    return TakagiFactorization(u=u[order], singular_values=values[order])
