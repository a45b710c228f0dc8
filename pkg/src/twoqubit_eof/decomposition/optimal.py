"""Optimal decomposition: at most four pure states, each with entanglement E(C(rho))."""

import logging

from twoqubit_eof.decomposition.closure import CASE_SLACK, zero_concurrence_ensemble
from twoqubit_eof.decomposition.ensembles import (
    Decomposition,
    DecompositionSource,
    eigen_ensemble,
    phase_adjusted_ensemble,
    tilde_orthogonal_with_spectrum,
)
from twoqubit_eof.decomposition.equalize import equalize_preconcurrence
from twoqubit_eof.quantum.states import DensityMatrix

logger = logging.getLogger(__name__)


def optimal_decomposition(rho: DensityMatrix) -> Decomposition:
    """Decomposition of rho whose average entanglement equals eof(rho).

    lambda_1 - lambda_2 - lambda_3 - lambda_4 >= 0 equalizes the phase-adjusted
    ensemble to C(rho); a negative difference gives the zero-concurrence ensemble.
    """
    if rho.rank == 1:
        eig = eigen_ensemble(rho)
        return Decomposition(vectors=eig.vectors, source=DecompositionSource.OPTIMAL)

    x, lams = tilde_orthogonal_with_spectrum(rho)
    diff = lams.difference
    if diff >= -CASE_SLACK:
        logger.debug(f"Equalizing rank-{lams.rank} ensemble to C={max(0.0, diff):.15g}")
        y = phase_adjusted_ensemble(x)
        return equalize_preconcurrence(y, max(0.0, diff))

    logger.debug(f"Building zero-concurrence ensemble (difference {diff:.3e})")
    return zero_concurrence_ensemble(x, lams)
