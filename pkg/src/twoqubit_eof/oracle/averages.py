"""Average entanglement and average concurrence of a decomposition.

The entanglement of each member comes from the von Neumann entropy of its
reduced state, not from the closed-form E(C), so the oracle stays independent
of the formula it checks.
"""

import numpy as np
from scipy.special import entr

from twoqubit_eof.decomposition.ensembles import Decomposition
from twoqubit_eof.quantum.measures import LN2
from twoqubit_eof.quantum.states import SIGMA_YY, ZERO_NORM_TOL


def member_entanglements(vectors: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Probabilities p_i and entropies E(w_i / |w_i|) for the rows of vectors.

    Members with p_i below 1e-14 get entropy 0.
    """
    vectors = np.asarray(vectors, dtype=np.complex128)
    p = np.einsum("ij,ij->i", vectors.conj(), vectors).real
    blocks = vectors.reshape(-1, 2, 2)
    reduced = blocks @ np.conj(np.swapaxes(blocks, 1, 2))
    w = np.linalg.eigvalsh(reduced)
    live = p > ZERO_NORM_TOL
    safe = np.where(live, p, 1.0)
    w = np.clip(w / safe[:, None], 0.0, 1.0)
    entropies = np.where(live, entr(w).sum(axis=1) / LN2, 0.0)
    return p, entropies


def average_entanglement_of(vectors: np.ndarray) -> float:
    """sum_i p_i E(w_i / |w_i|) for raw member rows."""
    p, entropies = member_entanglements(vectors)
    return float(np.dot(p, entropies))


def average_concurrence_of(vectors: np.ndarray) -> float:
    """sum_i |<w_i|w~_i>| for raw member rows (p_i C(w_i / |w_i|) = |<w_i|w~_i>|)."""
    vc = np.asarray(vectors, dtype=np.complex128).conj()
    return float(np.abs(np.einsum("ij,jk,ik->i", vc, SIGMA_YY, vc)).sum())


def average_entanglement(dec: Decomposition) -> float:
    """Probability-weighted mean entanglement of the members; zero-norm members skipped."""
    return average_entanglement_of(dec.vectors)


def average_concurrence(dec: Decomposition) -> float:
    """Probability-weighted mean concurrence of the members."""
    return average_concurrence_of(dec.vectors)
