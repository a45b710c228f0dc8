"""Random-restart local search for the least average entanglement of rho.

Decompositions are parametrized by an m x m unitary U whose first n columns
mix the eigen-ensemble. A move multiplies two rows of U by a random 2 x 2
unitary near the identity; a move is kept only if it lowers the average
entanglement, otherwise the step size shrinks.
"""

from __future__ import annotations

import logging

import numpy as np
from pydantic import field_validator

from twoqubit_eof.config import get_settings
from twoqubit_eof.decomposition.ensembles import eigen_ensemble
from twoqubit_eof.linalg.types import ArrayModel, frozen_array
from twoqubit_eof.oracle.averages import average_entanglement_of
from twoqubit_eof.oracle.sampling import generator, haar_isometry, member_cycle
from twoqubit_eof.quantum.states import DensityMatrix

logger = logging.getLogger(__name__)

INITIAL_STEP = 0.5
STEP_DECAY = 0.95
MIN_STEP = 1e-6


class SearchTrace(ArrayModel):
    """Outcome of a search.

    ``history`` holds the best value found so far after every evaluation,
    across all restarts; it never increases.
    """

    best_value: float
    best_members: int
    restart_values: list[float]
    history: np.ndarray

    @field_validator("history", mode="before")
    @classmethod
    def _freeze_history(cls, v: np.ndarray) -> np.ndarray:
        return frozen_array(v, np.float64)


def _two_row_move(u: np.ndarray, rng: np.random.Generator, step: float) -> np.ndarray:
    """Mix two random rows of u by a rotation of angle ~step with a random relative phase."""
    m = u.shape[0]
    i, j = rng.choice(m, size=2, replace=False)
    theta = step * rng.normal()
    phi = rng.uniform(0.0, 2.0 * np.pi)
    c, s = np.cos(theta), np.sin(theta)
    g = np.array([[c, -np.exp(1.0j * phi) * s], [np.exp(-1.0j * phi) * s, c]])
    out = u.copy()
    out[[i, j]] = g @ u[[i, j]]
    return out


def _local_search(
    v: np.ndarray,
    u: np.ndarray,
    rng: np.random.Generator,
    iterations: int,
) -> tuple[float, list[float]]:
    n = v.shape[0]

    def cost(unitary: np.ndarray) -> float:
        return average_entanglement_of(unitary[:, :n].conj() @ v)

    current = cost(u)
    values = [current]

    step = INITIAL_STEP
    for _ in range(iterations):
        candidate = _two_row_move(u, rng, step)
        value = cost(candidate)
        if value < current:
            u, current = candidate, value
        else:
            step = max(MIN_STEP, step * STEP_DECAY)
        values.append(current)
    return current, values


def search_decompositions(
    rho: DensityMatrix,
    restarts: int | None = None,
    iters: int | None = None,
    seed: int | None = None,
    max_members: int | None = None,
) -> SearchTrace:
    """Search the decompositions of rho for the least average entanglement.

    Restart k works with m = n + (k mod (max_members - n + 1)) members. Restart 0
    starts from the eigen-ensemble, later restarts from a Haar-random unitary.
    A pure rho has a single decomposition up to phases and returns at once.

    Args:
        rho: Density matrix to search over
        restarts: Number of restarts (default from settings)
        iters: Moves per restart (default from settings)
        seed: Seed of the restart streams (default from settings)
        max_members: Upper end of the member cycle (default from settings)
    """
    settings = get_settings()
    restarts = settings.search_restarts if restarts is None else restarts
    iters = settings.search_iterations if iters is None else iters
    seed = settings.seed if seed is None else seed
    max_members = settings.sample_max_members if max_members is None else max_members

    v = eigen_ensemble(rho).vectors
    n = v.shape[0]
    if n == 1:
        value = average_entanglement_of(v)
        return SearchTrace(
            best_value=value, best_members=1, restart_values=[value], history=np.array([value])
        )

    best, best_m = np.inf, n
    restart_values: list[float] = []
    history: list[float] = []
    for k in range(max(1, restarts)):
        m = member_cycle(n, k, max_members)
        rng = generator(seed, k)
        u = np.eye(m, dtype=np.complex128) if k == 0 else haar_isometry(m, m, rng)
        value, values = _local_search(v, u, rng, iters)
        history.extend(values)
        restart_values.append(value)
        if value < best:
            best, best_m = value, m
        logger.debug(f"Restart {k} (m={m}): {value:.12g}, best so far {best:.12g}")

    return SearchTrace(
        best_value=float(best),
        best_members=best_m,
        restart_values=restart_values,
        history=np.minimum.accumulate(np.array(history)),
    )


def minimize_over_decompositions(
    rho: DensityMatrix,
    restarts: int | None = None,
    iters: int | None = None,
    seed: int | None = None,
) -> float:
    """Best average entanglement found by search_decompositions."""
    return search_decompositions(rho, restarts=restarts, iters=iters, seed=seed).best_value
