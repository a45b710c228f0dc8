"""Tests for ensembles, equalization, the closure construction and the optimal decomposition."""

import numpy as np
import pytest

from tests.helpers import random_rho, random_unitary
from twoqubit_eof.decomposition import (
    ClosurePhases,
    Decomposition,
    DecompositionSource,
    TildeGram,
    apply_mixing,
    average_preconcurrence,
    eigen_ensemble,
    equalize_preconcurrence,
    optimal_decomposition,
    phase_adjusted_ensemble,
    right_eigen_residual,
    solve_closure_phases,
    tilde_gram,
    tilde_orthogonal_ensemble,
    tilde_orthogonal_with_spectrum,
    zero_concurrence_ensemble,
)
from twoqubit_eof.exceptions import (
    NoClosure,
    NotIsometry,
    NotSymmetric,
    TargetUnreachable,
    WrongCase,
)
from twoqubit_eof.oracle.averages import average_entanglement
from twoqubit_eof.quantum.measures import (
    LambdaSpectrum,
    calE,
    concurrence_mixed,
    eof,
    lambda_spectrum,
)
from twoqubit_eof.quantum.states import DensityMatrix, werner


def member_concurrences(dec: Decomposition) -> np.ndarray:
    return np.abs(dec.preconcurrences())


def separable_by_formula(rank: int, count: int, seed: int = 3) -> list[DensityMatrix]:
    """Random matrices with lambda_1 - lambda_2 - lambda_3 - lambda_4 clearly negative."""
    found = []
    index = 0
    while len(found) < count:
        rho = random_rho(rank, index, seed=seed)
        if lambda_spectrum(rho).difference < -1e-3:
            found.append(rho)
        index += 1
    return found


# Decomposition type


def test_decomposition_limits():
    with pytest.raises(ValueError):
        Decomposition(vectors=np.zeros((17, 4)), source=DecompositionSource.SAMPLED)
    with pytest.raises(ValueError):
        Decomposition(vectors=np.zeros((2, 3)), source=DecompositionSource.SAMPLED)


def test_tilde_gram_must_be_symmetric():
    with pytest.raises(NotSymmetric):
        TildeGram(entries=np.array([[0.0, 1.0], [0.0, 0.0]]))


# eigen ensemble and mixing


def test_eigen_ensemble_of_pure_projector(singlet_rho):
    dec = eigen_ensemble(singlet_rho)
    assert dec.size == 1
    assert dec.probabilities[0] == pytest.approx(1.0)


def test_eigen_ensemble_of_identity(identity_rho):
    dec = eigen_ensemble(identity_rho)
    assert dec.size == 4
    np.testing.assert_allclose(dec.probabilities, 0.25)
    np.testing.assert_allclose(dec.vectors.conj() @ dec.vectors.T, np.eye(4) / 4.0, atol=1e-15)


@pytest.mark.parametrize("rank", [1, 2, 3, 4])
def test_eigen_ensemble_reconstructs(rank):
    rho = random_rho(rank, 2)
    dec = eigen_ensemble(rho)
    assert dec.size == rank
    assert dec.reconstruction_error(rho) <= 1e-10


def test_apply_mixing_reconstructs(rng):
    rho = random_rho(3, 0)
    eig = eigen_ensemble(rho)
    u = random_unitary(rng, 6)[:, :3]
    mixed = apply_mixing(eig, u)
    assert mixed.size == 6
    assert mixed.reconstruction_error(rho) <= 1e-10


def test_apply_mixing_rejects_non_isometry():
    eig = eigen_ensemble(random_rho(2, 0))
    with pytest.raises(NotIsometry):
        apply_mixing(eig, np.ones((3, 2)))
    with pytest.raises(NotIsometry):
        apply_mixing(eig, np.eye(3))


# tilde-orthogonal and phase-adjusted ensembles


@pytest.mark.parametrize("rank", [1, 2, 3, 4])
def test_tilde_orthogonal_ensemble(rank):
    for index in range(25):
        rho = random_rho(rank, index)
        x, lams = tilde_orthogonal_with_spectrum(rho)
        gram = tilde_gram(x).entries

        assert x.source is DecompositionSource.TILDE_ORTHOGONAL
        assert x.reconstruction_error(rho) <= 1e-10
        np.testing.assert_allclose(gram - np.diag(np.diagonal(gram)), 0.0, atol=1e-9)
        np.testing.assert_allclose(np.diagonal(gram), lams.lambdas[:rank], atol=1e-9)
        np.testing.assert_allclose(lams.lambdas, lambda_spectrum(rho).lambdas, atol=1e-9)
        assert right_eigen_residual(x, rho) <= 1e-9


def test_tilde_orthogonal_ensemble_of_identity(identity_rho):
    x = tilde_orthogonal_ensemble(identity_rho)
    np.testing.assert_allclose(tilde_gram(x).entries, np.eye(4) / 4.0, atol=1e-12)


@pytest.mark.parametrize("rank", [2, 3, 4])
def test_phase_adjusted_sum_is_the_difference(rank):
    for index in range(10):
        rho = random_rho(rank, index)
        x, lams = tilde_orthogonal_with_spectrum(rho)
        y = phase_adjusted_ensemble(x)
        assert average_preconcurrence(y) == pytest.approx(lams.difference, abs=1e-10)
        assert y.reconstruction_error(rho) <= 1e-10


def test_real_rotations_conserve_average_preconcurrence(rng):
    rho = random_rho(4, 1)
    y = phase_adjusted_ensemble(tilde_orthogonal_ensemble(rho))
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
    rotated = apply_mixing(y, q)
    assert average_preconcurrence(rotated) == pytest.approx(average_preconcurrence(y), abs=1e-10)


# equalization


def test_equalize_rank_two_example(phi_plus_up_up):
    c = concurrence_mixed(phi_plus_up_up)
    assert c == pytest.approx(0.5, abs=1e-12)
    y = phase_adjusted_ensemble(tilde_orthogonal_ensemble(phi_plus_up_up))
    z = equalize_preconcurrence(y, c)

    assert z.size == 2
    np.testing.assert_allclose(z.preconcurrences().real, c, atol=1e-10)
    assert z.reconstruction_error(phi_plus_up_up) <= 1e-10


def test_equalize_pure_state_is_unchanged(singlet_rho):
    y = phase_adjusted_ensemble(tilde_orthogonal_ensemble(singlet_rho))
    z = equalize_preconcurrence(y, 1.0)
    np.testing.assert_allclose(z.vectors, y.vectors)


def test_equalize_rejects_wrong_target(phi_plus_up_up):
    y = phase_adjusted_ensemble(tilde_orthogonal_ensemble(phi_plus_up_up))
    with pytest.raises(TargetUnreachable):
        equalize_preconcurrence(y, 0.9)


# closure phases and zero-concurrence ensembles


def test_closure_phases_for_equal_lambdas():
    lams = LambdaSpectrum(lambdas=[0.25, 0.25, 0.25, 0.25], rank=4)
    phases = solve_closure_phases(lams)
    assert phases.thetas[0] == 0.0
    assert phases.residual(lams.lambdas) <= 1e-12


@pytest.mark.parametrize(
    "lambdas",
    [[0.4, 0.3, 0.2, 0.1], [0.5, 0.2, 0.2, 0.2], [0.3, 0.3, 0.2, 0.0], [0.35, 0.3, 0.1, 0.0]],
)
def test_closure_phases_close_the_polygon(lambdas):
    lams = LambdaSpectrum(lambdas=lambdas, rank=4 if lambdas[3] > 0 else 3)
    assert solve_closure_phases(lams).residual(lams.lambdas) <= 1e-12


def test_no_closure_when_first_lambda_dominates():
    with pytest.raises(NoClosure):
        solve_closure_phases(LambdaSpectrum(lambdas=[0.7, 0.2, 0.05, 0.05], rank=4))


def test_no_closure_on_the_boundary():
    # lambda_1 == lambda_2 + lambda_3 + lambda_4 belongs to the equalize path (C = 0)
    with pytest.raises(NoClosure):
        solve_closure_phases(LambdaSpectrum(lambdas=[0.5, 0.3, 0.2, 0.0], rank=3))


def test_closure_phases_validate_shape():
    with pytest.raises(ValueError):
        ClosurePhases(thetas=[0.0, 1.0])


def test_zero_concurrence_ensemble_rejects_entangled():
    x, lams = tilde_orthogonal_with_spectrum(werner(0.8))
    with pytest.raises(WrongCase):
        zero_concurrence_ensemble(x, lams)


def test_identity_gives_four_product_states(identity_rho):
    dec = optimal_decomposition(identity_rho)
    assert dec.size == 4
    np.testing.assert_allclose(dec.probabilities, 0.25, atol=1e-12)
    assert member_concurrences(dec).max() <= 1e-10
    assert dec.reconstruction_error(identity_rho) <= 1e-10


def test_werner_below_threshold():
    rho = werner(0.2)
    dec = optimal_decomposition(rho)
    assert dec.source is DecompositionSource.ZERO_CONCURRENCE
    assert dec.size == 4
    assert member_concurrences(dec).max() <= 1e-10
    assert dec.reconstruction_error(rho) <= 1e-10


def test_rank_three_drops_the_dummy_member():
    for rho in separable_by_formula(3, 5):
        x, lams = tilde_orthogonal_with_spectrum(rho)
        dec = zero_concurrence_ensemble(x, lams)
        assert dec.size <= 4
        assert np.all(dec.probabilities >= 1e-14)
        assert member_concurrences(dec).max() <= 1e-10
        assert dec.reconstruction_error(rho) <= 1e-10


def _check_separable_case(count):
    for rank in (3, 4):
        for rho in separable_by_formula(rank, count // 2):
            x, lams = tilde_orthogonal_with_spectrum(rho)
            assert solve_closure_phases(lams).residual(lams.lambdas) <= 1e-12
            dec = zero_concurrence_ensemble(x, lams)
            assert member_concurrences(dec).max() <= 1e-10
            assert dec.reconstruction_error(rho) <= 1e-10


def test_separable_case_construction():
    _check_separable_case(40)


@pytest.mark.slow
def test_separable_case_construction_full():
    _check_separable_case(500)


# optimal decomposition


def test_singlet_is_its_own_optimal_decomposition(singlet_rho):
    dec = optimal_decomposition(singlet_rho)
    assert dec.size == 1
    assert average_entanglement(dec) == pytest.approx(1.0, abs=1e-12)


def _check_optimal(rank, count, seed):
    for index in range(count):
        rho = random_rho(rank, index, seed=seed)
        dec = optimal_decomposition(rho)
        c = concurrence_mixed(rho)

        assert dec.size <= 4
        assert dec.reconstruction_error(rho) <= 1e-10
        if c > 0.0:
            np.testing.assert_allclose(member_concurrences(dec), c, atol=1e-8)
        else:
            assert member_concurrences(dec).max() <= 1e-10
        assert average_entanglement(dec) == pytest.approx(calE(c), abs=1e-8)


@pytest.mark.parametrize("rank", [1, 2, 3, 4])
def test_optimal_decomposition_matches_formula(rank):
    _check_optimal(rank, 30, seed=5)


@pytest.mark.slow
@pytest.mark.parametrize("rank", [1, 2, 3, 4])
def test_optimal_decomposition_matches_formula_full(rank):
    _check_optimal(rank, 500, seed=2024)


def test_optimal_decomposition_of_entangled_werner():
    rho = werner(0.9)
    dec = optimal_decomposition(rho)
    assert dec.source is DecompositionSource.OPTIMAL
    assert average_entanglement(dec) == pytest.approx(eof(rho), abs=1e-8)


@pytest.mark.parametrize("eps", [1e-11, 1e-10, 1e-9])
def test_optimal_decomposition_with_tiny_eigenvalue(eps):
    checked = 0
    for index in range(40):
        rho3 = random_rho(3, index, seed=4)
        kernel = rho3.eigen().eigenvectors[:, -1]
        rho = DensityMatrix(
            matrix=(1.0 - eps) * rho3.matrix + eps * np.outer(kernel, kernel.conj())
        )
        c = concurrence_mixed(rho)
        if c <= 1e-6:
            continue
        assert rho.rank == 4

        dec = optimal_decomposition(rho)
        assert dec.source is DecompositionSource.OPTIMAL
        assert dec.reconstruction_error(rho) <= 1e-10
        np.testing.assert_allclose(member_concurrences(dec), c, atol=1e-9)
        assert average_entanglement(dec) == pytest.approx(calE(c), abs=1e-8)
        checked += 1
    assert checked > 0


def test_equalize_lands_every_member_on_the_mean():
    rho = next(
        random_rho(4, index, seed=11)
        for index in range(200)
        if lambda_spectrum(random_rho(4, index, seed=11)).difference > 1e-3
    )
    c = concurrence_mixed(rho)
    y = phase_adjusted_ensemble(tilde_orthogonal_ensemble(rho))
    z = equalize_preconcurrence(y, c)

    assert z.size == 4
    np.testing.assert_allclose(z.preconcurrences().real, c, atol=1e-10)
    assert z.reconstruction_error(rho) <= 1e-10
