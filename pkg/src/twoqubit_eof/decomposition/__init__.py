"""Pure-state decompositions of two-qubit density matrices."""

from twoqubit_eof.decomposition.closure import (
    ClosurePhases,
    solve_closure_phases,
    zero_concurrence_ensemble,
)
from twoqubit_eof.decomposition.ensembles import (
    Decomposition,
    DecompositionSource,
    TildeGram,
    apply_mixing,
    average_preconcurrence,
    eigen_ensemble,
    phase_adjusted_ensemble,
    right_eigen_residual,
    tilde_gram,
    tilde_orthogonal_ensemble,
    tilde_orthogonal_with_spectrum,
)
from twoqubit_eof.decomposition.equalize import equalize_preconcurrence
from twoqubit_eof.decomposition.optimal import optimal_decomposition

__all__ = [
    "ClosurePhases",
    "Decomposition",
    "DecompositionSource",
    "TildeGram",
    "apply_mixing",
    "average_preconcurrence",
    "eigen_ensemble",
    "equalize_preconcurrence",
    "optimal_decomposition",
    "phase_adjusted_ensemble",
    "right_eigen_residual",
    "solve_closure_phases",
    "tilde_gram",
    "tilde_orthogonal_ensemble",
    "tilde_orthogonal_with_spectrum",
    "zero_concurrence_ensemble",
]
