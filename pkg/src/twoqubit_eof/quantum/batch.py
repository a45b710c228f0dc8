"""Vectorized lambda spectra for stacks of density matrices.

Same tau route as ``lambda_spectrum``, but every step runs batched over the
leading axis: one Hermitian eigensolve for all rho, then the singular values
of all tau (the Takagi values of a symmetric matrix are its singular values).
"""

import logging

import numpy as np

from twoqubit_eof.exceptions import InvalidDensityMatrix
from twoqubit_eof.quantum.measures import calE_array
from twoqubit_eof.quantum.states import DENSITY_TOL, RANK_TOL, SIGMA_YY

logger = logging.getLogger(__name__)


def _as_stack(matrices: np.ndarray) -> np.ndarray:
    stack = np.asarray(matrices, dtype=np.complex128)
    if stack.ndim == 2:
        stack = stack[None]
    if stack.ndim != 3 or stack.shape[1:] != (4, 4):
        raise InvalidDensityMatrix(f"expected a stack of 4x4 matrices, got shape {stack.shape}")
    return stack


def lambda_spectra(matrices: np.ndarray) -> np.ndarray:
    """Descending lambdas for each matrix of an (N, 4, 4) stack.

    Raises:
        InvalidDensityMatrix: naming the first offending index
    """
    stack = _as_stack(matrices)
    adjoint = np.conj(np.swapaxes(stack, 1, 2))
    defects = np.abs(stack - adjoint).max(axis=(1, 2))
    traces = np.trace(stack, axis1=1, axis2=2)
    bad = np.flatnonzero((defects > DENSITY_TOL) | (np.abs(traces - 1.0) > DENSITY_TOL))
    if bad.size:
        raise InvalidDensityMatrix(f"matrix {int(bad[0])} is not a valid density matrix")

    w, q = np.linalg.eigh(0.5 * (stack + adjoint))
    if np.any(w[:, 0] < -DENSITY_TOL):
        index = int(np.flatnonzero(w[:, 0] < -DENSITY_TOL)[0])
        raise InvalidDensityMatrix(f"matrix {index} is not positive semidefinite")

    w = np.where(w > RANK_TOL * traces.real[:, None], w, 0.0)
    # columns of v are the subnormalized eigenvectors
    v = q * np.sqrt(w)[:, None, :]
    vc = v.conj()
    tau = np.swapaxes(vc, 1, 2) @ SIGMA_YY @ vc
    return np.linalg.svd(tau, compute_uv=False)


def concurrence_many(matrices: np.ndarray) -> np.ndarray:
    """C(rho) for each matrix of the stack."""
    lam = lambda_spectra(matrices)
    return np.clip(lam[:, 0] - lam[:, 1] - lam[:, 2] - lam[:, 3], 0.0, 1.0)


def eof_many(matrices: np.ndarray) -> np.ndarray:
    """E(rho) for each matrix of the stack."""
    return calE_array(concurrence_many(matrices))
