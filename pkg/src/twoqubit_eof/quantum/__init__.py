"""Two-qubit states, spin flip, concurrence and entanglement of formation."""

from twoqubit_eof.quantum.batch import concurrence_many, eof_many, lambda_spectra
from twoqubit_eof.quantum.measures import (
    LambdaSpectrum,
    calE,
    concurrence_mixed,
    concurrence_pure,
    entropy_of_entanglement,
    eof,
    lambda_spectrum,
    lambda_spectrum_product_route,
    lambda_spectrum_r_route,
    preconcurrence,
    reduced_states,
)
from twoqubit_eof.quantum.states import (
    BASIS_LABELS,
    DensityMatrix,
    PureState,
    apply_local_unitaries,
    basis_state,
    bell_state,
    maximally_mixed,
    singlet,
    spin_flip_density,
    spin_flip_pure,
    tilde_inner,
    werner,
)

__all__ = [
    "BASIS_LABELS",
    "DensityMatrix",
    "LambdaSpectrum",
    "PureState",
    "apply_local_unitaries",
    "basis_state",
    "bell_state",
    "calE",
    "concurrence_many",
    "concurrence_mixed",
    "concurrence_pure",
    "entropy_of_entanglement",
    "eof",
    "eof_many",
    "lambda_spectra",
    "lambda_spectrum",
    "lambda_spectrum_product_route",
    "lambda_spectrum_r_route",
    "maximally_mixed",
    "preconcurrence",
    "reduced_states",
    "singlet",
    "spin_flip_density",
    "spin_flip_pure",
    "tilde_inner",
    "werner",
]
