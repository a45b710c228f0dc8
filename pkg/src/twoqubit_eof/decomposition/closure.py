"""Zero-concurrence ensemble for lambda_1 < lambda_2 + lambda_3 + lambda_4.

With phases theta_j such that sum_j exp(2i theta_j) lambda_j = 0, the four
states z_i = (1/2) sum_j s_ij exp(i theta_j) x_j (s a sign pattern of a 4x4
Hadamard matrix) all have zero tilde self-product and thus zero concurrence.
"""

from __future__ import annotations

import logging
from typing import Any

import numpy as np
from pydantic import field_validator

from twoqubit_eof.decomposition.ensembles import Decomposition, DecompositionSource
from twoqubit_eof.exceptions import NoClosure, WrongCase
from twoqubit_eof.linalg.types import ArrayModel, frozen_array
from twoqubit_eof.quantum.measures import LambdaSpectrum
from twoqubit_eof.quantum.states import ZERO_NORM_TOL

logger = logging.getLogger(__name__)

# Slack on lambda_1 < lambda_2 + lambda_3 + lambda_4
CASE_SLACK = 1e-12

HADAMARD_SIGNS = np.array(
    [
        [1.0, 1.0, 1.0, 1.0],
        [1.0, 1.0, -1.0, -1.0],
        [1.0, -1.0, 1.0, -1.0],
        [1.0, -1.0, -1.0, 1.0],
    ]
)


class ClosurePhases(ArrayModel):
    """Phases theta_1..theta_4 (radians) with theta_1 = 0."""

    thetas: np.ndarray

    @field_validator("thetas", mode="before")
    @classmethod
    def _check_thetas(cls, v: Any) -> np.ndarray:
        arr = np.asarray(v, dtype=np.float64)
        if arr.shape != (4,):
            raise ValueError(f"expected 4 phases, got shape {arr.shape}")
        return frozen_array(arr, np.float64)

    def residual(self, lambdas: np.ndarray) -> float:
        """|sum_j exp(2i theta_j) lambda_j|."""
        return float(abs(np.sum(np.exp(2.0j * self.thetas) * lambdas)))


def _law_of_cosines(a: float, b: float, opposite: float) -> float:
    """Angle between sides a and b of a triangle whose third side is ``opposite``."""
    cos_angle = (a * a + b * b - opposite * opposite) / (2.0 * a * b)
    return float(np.arccos(np.clip(cos_angle, -1.0, 1.0)))


def solve_closure_phases(lams: LambdaSpectrum) -> ClosurePhases:
    """Phases closing the quadrilateral with sides lambda_1..lambda_4.

    lambda_1 and lambda_2 form one triangle with a diagonal of length r,
    lambda_3 and lambda_4 the other; r is the midpoint of its feasible range.

    The boundary lambda_1 == lambda_2 + lambda_3 + lambda_4 (within 1e-12) is
    rejected: there C = 0 and the equalization path applies, so a degenerate
    closure such as (0.5, 0.3, 0.2, 0.0) raises.

    Raises:
        NoClosure: if lambda_1 >= lambda_2 + lambda_3 + lambda_4
    """
    l1, l2, l3, l4 = (float(x) for x in lams.lambdas)
    if l1 - (l2 + l3 + l4) >= -CASE_SLACK:
        raise NoClosure(f"lambda_1={l1:.15g} is not below lambda_2+lambda_3+lambda_4")

    r_low = max(l1 - l2, l3 - l4)
    r_high = min(l1 + l2, l3 + l4)
    r = 0.5 * (r_low + r_high)

    # lambda_1 along the real axis, lambda_2 turned by alpha_2 so that the sum has length r
    alpha2 = np.pi - _law_of_cosines(l1, l2, r)
    diagonal = l1 + l2 * np.exp(1.0j * alpha2)
    # lambda_3 and lambda_4 must add up to -diagonal
    gamma = np.angle(-diagonal)
    delta = _law_of_cosines(r, l3, l4)
    alpha3 = gamma - delta
    rest = -diagonal - l3 * np.exp(1.0j * alpha3)
    alpha4 = float(np.angle(rest)) if l4 > 0.0 else 0.0

    phases = ClosurePhases(thetas=0.5 * np.array([0.0, alpha2, alpha3, alpha4]))
    logger.debug(f"Closure phases {phases.thetas} (residual {phases.residual(lams.lambdas):.2e})")
    return phases


def zero_concurrence_ensemble(x: Decomposition, lams: LambdaSpectrum) -> Decomposition:
    """Four unentangled members built from the tilde-orthogonal ensemble x.

    A rank-3 x is padded with a zero vector; members with norm^2 below 1e-14
    are dropped from the result.

    Raises:
        WrongCase: if lambda_1 - lambda_2 - lambda_3 - lambda_4 >= 0
    """
    if lams.difference >= -CASE_SLACK:
        raise WrongCase(
            f"lambda_1 - lambda_2 - lambda_3 - lambda_4 = {lams.difference:.3e} is not negative"
        )
    phases = solve_closure_phases(lams)

    padded = np.zeros((4, 4), dtype=np.complex128)
    padded[: x.size] = x.vectors
    z = 0.5 * HADAMARD_SIGNS @ (np.exp(1.0j * phases.thetas)[:, None] * padded)

    keep = np.einsum("ij,ij->i", z.conj(), z).real >= ZERO_NORM_TOL
    if not keep.all():
        logger.debug(f"Dropping {int((~keep).sum())} zero-norm member(s)")
    return Decomposition(vectors=z[keep], source=DecompositionSource.ZERO_CONCURRENCE)
