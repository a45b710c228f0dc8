"""Seeded random density matrices, Haar isometries and random decompositions.

Draw k of a seeded stream uses its own generator,
``default_rng(SeedSequence(seed, spawn_key=(k,)))``, so any subset of a
stream can be regenerated, in any order and on any thread, bit for bit.
"""

from __future__ import annotations

import logging
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.linalg import qr

from twoqubit_eof.config import MAX_MEMBERS
from twoqubit_eof.decomposition.ensembles import (
    Decomposition,
    DecompositionSource,
    apply_mixing,
    eigen_ensemble,
)
from twoqubit_eof.exceptions import TooFewMembers, TooManyMembers
from twoqubit_eof.linalg.types import ComplexMatrix
from twoqubit_eof.quantum.states import DensityMatrix

logger = logging.getLogger(__name__)


class SamplingMethod(str, Enum):
    """How random density matrices are drawn."""

    GINIBRE = "ginibre"
    MIXTURE_OF_PURES = "mixture_of_pures"
    HAAR_PURE = "haar_pure"


class RandomSpec(BaseModel):
    """Reproducible description of a stream of random density matrices."""

    model_config = ConfigDict(frozen=True)

    method: SamplingMethod = SamplingMethod.GINIBRE
    rank: int = Field(default=4, ge=1, le=4)
    count: int = Field(default=1, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _check_rank(self) -> RandomSpec:
        if self.method is SamplingMethod.HAAR_PURE and self.rank != 1:
            raise ValueError("haar_pure draws pure states; rank must be 1")
        return self


def generator(seed: int, index: int) -> np.random.Generator:
    """Independent generator for draw ``index`` of stream ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def complex_gaussian(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """Standard circular complex Gaussian entries (E|z|^2 = 1)."""
    scale = np.sqrt(0.5)
    return rng.normal(0.0, scale, size=shape) + 1j * rng.normal(0.0, scale, size=shape)


def haar_isometry(m: int, n: int, rng: np.random.Generator) -> ComplexMatrix:
    """Haar-distributed m x n matrix with orthonormal columns (m >= n).

    QR of a complex Gaussian matrix, with the columns of Q multiplied by the
    phases of diag(R) so that R has a positive diagonal.
    """
    if n > m:
        raise ValueError(f"an isometry needs m >= n, got {m} x {n}")
    q, r = qr(complex_gaussian(rng, (m, n)), mode="economic")
    d = np.diagonal(r)
    phases = np.where(np.abs(d) > 0.0, d / np.abs(d), 1.0)
    return q * phases


def _haar_pure(rng: np.random.Generator) -> np.ndarray:
    psi = complex_gaussian(rng, (4,))
    return psi / np.linalg.norm(psi)


def _finish(matrix: np.ndarray) -> DensityMatrix:
    matrix = 0.5 * (matrix + matrix.conj().T)
    return DensityMatrix(matrix=matrix / np.trace(matrix).real)


def random_density_matrix(spec: RandomSpec, index: int = 0) -> DensityMatrix:
    """Matrix ``index`` of the stream described by spec."""
    rng = generator(spec.seed, index)
    if spec.method is SamplingMethod.GINIBRE:
        g = complex_gaussian(rng, (4, spec.rank))
        return _finish(g @ g.conj().T)
    if spec.method is SamplingMethod.MIXTURE_OF_PURES:
        weights = rng.dirichlet(np.ones(spec.rank))
        states = np.stack([_haar_pure(rng) for _ in range(spec.rank)])
        return _finish(np.einsum("k,ki,kj->ij", weights, states, states.conj()))
    psi = _haar_pure(rng)
    return _finish(np.outer(psi, psi.conj()))


def random_density_matrices(spec: RandomSpec) -> list[DensityMatrix]:
    """All ``spec.count`` matrices of the stream, in order."""
    logger.debug(f"Drawing {spec.count} {spec.method.value} matrices (rank {spec.rank})")
    return [random_density_matrix(spec, k) for k in range(spec.count)]


def random_decomposition(rho: DensityMatrix, m: int, seed: int, index: int = 0) -> Decomposition:
    """m-member decomposition of rho through a Haar-random m x n isometry.

    Raises:
        TooFewMembers: if m is below the rank of rho
        TooManyMembers: if m exceeds sixteen
    """
    eig = eigen_ensemble(rho)
    if m < eig.size:
        raise TooFewMembers(f"m={m} is below the rank {eig.size}")
    if m > MAX_MEMBERS:
        raise TooManyMembers(f"m={m} exceeds the cap of {MAX_MEMBERS} members")
    u = haar_isometry(m, eig.size, generator(seed, index))
    return apply_mixing(eig, u, source=DecompositionSource.SAMPLED)


def member_cycle(rank: int, k: int, max_members: int) -> int:
    """k-th value of the cycle rank, rank + 1, ..., max(rank, max_members)."""
    top = min(max(rank, max_members), MAX_MEMBERS)
    return rank + k % (top - rank + 1)
