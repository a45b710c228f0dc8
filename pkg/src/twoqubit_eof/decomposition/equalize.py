"""Equal-preconcurrence ensemble by successive real two-member rotations.

Real orthogonal mixings keep sum_i <z_i|z~_i> fixed. At each step the members
with the largest and smallest preconcurrence are rotated into each other
until the first one hits the mean; it is then fixed and the procedure repeats
on the rest. The final pair is rotated until both members agree, which by
conservation puts both on the mean.
"""

import logging

import numpy as np
from scipy.optimize import bisect

from twoqubit_eof.decomposition.ensembles import (
    Decomposition,
    DecompositionSource,
    average_preconcurrence,
)
from twoqubit_eof.exceptions import TargetUnreachable
from twoqubit_eof.quantum.states import SIGMA_YY

logger = logging.getLogger(__name__)

# Members within this of the mean need no rotation
BISECTION_TOL = 1e-14
# Bisection stops once the angle bracket is this narrow
ANGLE_XTOL = 1e-18
BISECTION_MAX_ITER = 200
# Allowed gap between the conserved mean preconcurrence and the requested target
TARGET_TOL = 1e-10
# Allowed deviation of the final pair from the mean
LAST_MEMBER_TOL = 1e-10


def _preconcurrence(vector: np.ndarray) -> float:
    """Real part of <z|z~> / <z|z>; exact reals for real mixings of phase-adjusted members."""
    vc = vector.conj()
    return float((vc @ SIGMA_YY @ vc).real / np.vdot(vector, vector).real)


def _rotate(za: np.ndarray, zb: np.ndarray, phi: float) -> tuple[np.ndarray, np.ndarray]:
    c, s = np.cos(phi), np.sin(phi)
    return c * za + s * zb, -s * za + c * zb


def _solve_angle(za: np.ndarray, zb: np.ndarray, target: float) -> float:
    """Angle in [0, pi/2] where the rotated first member has preconcurrence target.

    g(0) = c(za) - target >= 0 and g(pi/2) = c(zb) - target <= 0.
    """

    def g(phi: float) -> float:
        return _preconcurrence(_rotate(za, zb, phi)[0]) - target

    if g(0.5 * np.pi) >= 0.0:
        return 0.5 * np.pi
    phi, result = bisect(
        g, 0.0, 0.5 * np.pi, xtol=ANGLE_XTOL, maxiter=BISECTION_MAX_ITER, full_output=True
    )
    logger.debug(f"Bisection converged after {result.iterations} steps (g={g(phi):.2e})")
    return float(phi)


def _solve_pair(za: np.ndarray, zb: np.ndarray) -> float:
    """Angle in [0, pi/2] where the two rotated members have equal preconcurrence.

    h(0) = c(za) - c(zb) >= 0 and h(pi/2) = c(zb) - c(za) <= 0.
    """

    def h(phi: float) -> float:
        wa, wb = _rotate(za, zb, phi)
        return _preconcurrence(wa) - _preconcurrence(wb)

    if h(0.0) <= 0.0:
        return 0.0
    phi, result = bisect(
        h, 0.0, 0.5 * np.pi, xtol=ANGLE_XTOL, maxiter=BISECTION_MAX_ITER, full_output=True
    )
    logger.debug(f"Final pair converged after {result.iterations} steps (h={h(phi):.2e})")
    return float(phi)


def equalize_preconcurrence(y: Decomposition, target: float) -> Decomposition:
    """Mix y by real rotations until every member has preconcurrence ``target``.

    Args:
        y: Phase-adjusted ensemble (real diagonal tilde Gram matrix)
        target: C(rho), equal to the conserved sum of tilde self-products

    Raises:
        TargetUnreachable: if the conserved mean differs from target or the
            final pair misses it
    """
    mean = average_preconcurrence(y).real
    if abs(mean - target) > TARGET_TOL:
        raise TargetUnreachable(
            f"mean preconcurrence {mean:.15g} does not match target {target:.15g}"
        )

    z = np.array(y.vectors, dtype=np.complex128)
    active = list(range(y.size))
    while len(active) > 2:
        values = np.array([_preconcurrence(z[k]) for k in active])
        a = active[int(np.argmax(values))]
        b = active[int(np.argmin(values))]
        if values.max() - mean > BISECTION_TOL and a != b:
            phi = _solve_angle(z[a], z[b], mean)
            z[a], z[b] = _rotate(z[a], z[b], phi)
            logger.debug(f"Rotated members {a} and {b} by {phi:.6f} rad")
        active.remove(a)

    if len(active) == 2:
        a, b = active
        if _preconcurrence(z[a]) < _preconcurrence(z[b]):
            a, b = b, a
        phi = _solve_pair(z[a], z[b])
        z[a], z[b] = _rotate(z[a], z[b], phi)
        logger.debug(f"Rotated final pair {a} and {b} by {phi:.6f} rad")

    miss = max(abs(_preconcurrence(z[k]) - mean) for k in active)
    if miss > LAST_MEMBER_TOL:
        raise TargetUnreachable(f"final pair misses the mean preconcurrence by {miss:.3e}")

    return Decomposition(vectors=z, source=DecompositionSource.OPTIMAL)
