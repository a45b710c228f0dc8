"""Test helpers for building states and matrix files."""

import numpy as np

from twoqubit_eof.config import BASIS_DECLARATION
from twoqubit_eof.oracle.sampling import RandomSpec, SamplingMethod, random_density_matrix
from twoqubit_eof.quantum.states import DensityMatrix, PureState


def random_rho(rank: int, index: int, seed: int = 7) -> DensityMatrix:
    return random_density_matrix(
        RandomSpec(method=SamplingMethod.GINIBRE, rank=rank, seed=seed), index
    )


def random_pure(rng: np.random.Generator) -> PureState:
    z = rng.normal(size=4) + 1j * rng.normal(size=4)
    return PureState(amplitudes=z).normalize()


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def matrix_file_payload(matrices: dict[str, np.ndarray]) -> dict:
    return {
        "basis": BASIS_DECLARATION,
        "matrices": [
            {
                "label": label,
                "entries": [[[float(z.real), float(z.imag)] for z in row] for row in m],
            }
            for label, m in matrices.items()
        ],
    }
