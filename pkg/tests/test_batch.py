"""Tests for the vectorized spectra."""

import time

import numpy as np
import pytest

from tests.helpers import random_rho
from twoqubit_eof.exceptions import InvalidDensityMatrix
from twoqubit_eof.quantum.batch import concurrence_many, eof_many, lambda_spectra
from twoqubit_eof.quantum.measures import concurrence_mixed, eof, lambda_spectrum
from twoqubit_eof.quantum.states import werner


@pytest.fixture
def stack():
    matrices = [random_rho(1 + k % 4, k) for k in range(40)]
    return matrices, np.stack([rho.matrix for rho in matrices])


def test_matches_scalar_path(stack):
    matrices, arrays = stack
    spectra = lambda_spectra(arrays)
    for rho, lam, c, e in zip(
        matrices, spectra, concurrence_many(arrays), eof_many(arrays), strict=True
    ):
        np.testing.assert_allclose(lam, lambda_spectrum(rho).lambdas, atol=1e-10)
        assert c == pytest.approx(concurrence_mixed(rho), abs=1e-10)
        assert e == pytest.approx(eof(rho), abs=1e-10)


def test_single_matrix_is_promoted():
    result = concurrence_many(werner(0.5).matrix)
    assert result.shape == (1,)
    assert result[0] == pytest.approx(0.25, abs=1e-12)


def test_invalid_entry_is_named(stack):
    _, arrays = stack
    arrays = arrays.copy()
    arrays[5, 0, 0] += 0.5
    with pytest.raises(InvalidDensityMatrix, match="matrix 5"):
        lambda_spectra(arrays)


def test_rejects_wrong_shape():
    with pytest.raises(InvalidDensityMatrix):
        lambda_spectra(np.zeros((2, 3, 3)))


@pytest.mark.slow
def test_eof_many_throughput():
    rng = np.random.default_rng(8)
    g = rng.normal(size=(100_000, 4, 4)) + 1j * rng.normal(size=(100_000, 4, 4))
    rho = g @ g.conj().transpose(0, 2, 1)
    rho /= np.trace(rho, axis1=1, axis2=2).real[:, None, None]

    start = time.perf_counter()
    values = eof_many(rho)
    elapsed = time.perf_counter() - start

    assert values.shape == (100_000,)
    assert np.all((values >= 0.0) & (values <= 1.0))
    assert elapsed < 5.0
