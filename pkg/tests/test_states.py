"""Tests for pure states, density matrices and the spin flip."""

import numpy as np
import pytest

from tests.helpers import random_pure, random_rho, random_unitary
from twoqubit_eof.exceptions import InvalidDensityMatrix, NotNormalized, OutOfRange, ZeroNorm
from twoqubit_eof.quantum.states import (
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
    tilde_products,
    werner,
)


def test_pure_state_rejects_wrong_length():
    with pytest.raises(ValueError):
        PureState(amplitudes=[1.0, 0.0, 0.0])


def test_normalized_flag_is_checked():
    with pytest.raises(NotNormalized):
        PureState(amplitudes=[1.0, 1.0, 0.0, 0.0], normalized=True)


def test_normalize():
    psi = PureState(amplitudes=[3.0, 0.0, 0.0, 4.0j]).normalize()
    assert psi.normalized
    assert psi.norm_squared == pytest.approx(1.0, abs=1e-15)


def test_normalize_zero_vector():
    with pytest.raises(ZeroNorm):
        PureState(amplitudes=np.zeros(4)).normalize()


def test_amplitudes_are_read_only():
    psi = basis_state("up-up")
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0.0


@pytest.mark.parametrize("name", ["phi+", "phi-", "psi+", "psi-"])
def test_bell_states_are_normalized(name):
    assert bell_state(name).norm_squared == pytest.approx(1.0, abs=1e-15)


def test_singlet_is_psi_minus():
    r = 1.0 / np.sqrt(2.0)
    np.testing.assert_allclose(singlet().amplitudes, [0.0, r, -r, 0.0])


# density matrices


def test_density_matrix_rejects_wrong_shape():
    with pytest.raises(InvalidDensityMatrix):
        DensityMatrix(matrix=np.eye(3) / 3.0)


def test_density_matrix_reports_non_hermitian_location():
    m = np.eye(4, dtype=complex) / 4.0
    m[1, 2] = 0.1
    with pytest.raises(InvalidDensityMatrix) as info:
        DensityMatrix(matrix=m)
    assert info.value.location in {(1, 2), (2, 1)}


def test_density_matrix_rejects_bad_trace():
    with pytest.raises(InvalidDensityMatrix, match="trace"):
        DensityMatrix(matrix=np.eye(4) / 2.0)


def test_density_matrix_rejects_negative_eigenvalue():
    m = np.diag([0.6, 0.6, 0.1, -0.3]).astype(complex)
    with pytest.raises(InvalidDensityMatrix, match="positive"):
        DensityMatrix(matrix=m)


def test_density_matrix_rejects_nan():
    m = np.eye(4, dtype=complex) / 4.0
    m[3, 0] = np.nan
    with pytest.raises(InvalidDensityMatrix) as info:
        DensityMatrix(matrix=m)
    assert info.value.location == (3, 0)


@pytest.mark.parametrize("rank", [1, 2, 3, 4])
def test_rank_and_subnormalized_eigenvectors(rank):
    rho = random_rho(rank, 0)
    v = rho.subnormalized_eigenvectors()

    assert rho.rank == rank
    assert v.shape == (rank, 4)
    np.testing.assert_allclose(v.T @ v.conj(), rho.matrix, atol=1e-12)
    norms = np.einsum("ij,ij->i", v.conj(), v).real
    assert np.all(np.diff(norms) <= 0.0)


def test_from_pure_normalizes():
    rho = DensityMatrix.from_pure(PureState(amplitudes=[2.0, 0.0, 0.0, 0.0]))
    assert rho.rank == 1
    assert rho.purity() == pytest.approx(1.0)


def test_maximally_mixed():
    rho = maximally_mixed()
    assert rho.rank == 4
    assert rho.purity() == pytest.approx(0.25)


def test_werner_range():
    with pytest.raises(OutOfRange):
        werner(1.5)
    np.testing.assert_allclose(werner(0.0).matrix, np.eye(4) / 4.0)


# spin flip and tilde inner product


def test_spin_flip_of_singlet_is_singlet_up_to_phase():
    flipped = spin_flip_pure(singlet())
    assert abs(np.vdot(singlet().amplitudes, flipped.amplitudes)) == pytest.approx(1.0)


def test_spin_flip_of_product_state_is_orthogonal():
    psi = basis_state("up-down")
    assert tilde_inner(psi, psi) == pytest.approx(0.0)


@pytest.mark.parametrize("rank", [1, 2, 4])
def test_spin_flip_density_is_an_involution(rank):
    rho = random_rho(rank, 3)
    flipped = spin_flip_density(rho)

    np.testing.assert_allclose(spin_flip_density(flipped).matrix, rho.matrix, atol=1e-14)
    assert np.trace(flipped.matrix).real == pytest.approx(1.0)
    assert np.linalg.eigvalsh(flipped.matrix).min() >= -1e-12


def test_tilde_inner_is_symmetric(rng):
    a, b = random_pure(rng), random_pure(rng)
    assert tilde_inner(a, b) == pytest.approx(tilde_inner(b, a), abs=1e-14)


def test_tilde_products_matches_tilde_inner(rng):
    states = [random_pure(rng) for _ in range(3)]
    tau = tilde_products(np.stack([s.amplitudes for s in states]))
    for i, a in enumerate(states):
        for j, b in enumerate(states):
            assert tau[i, j] == pytest.approx(tilde_inner(a, b), abs=1e-14)


def test_local_unitaries_preserve_spectrum(rng):
    rho = random_rho(3, 1)
    moved = apply_local_unitaries(rho, random_unitary(rng, 2), random_unitary(rng, 2))
    np.testing.assert_allclose(
        np.linalg.eigvalsh(moved.matrix), np.linalg.eigvalsh(rho.matrix), atol=1e-12
    )
