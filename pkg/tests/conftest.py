"""Shared fixtures."""

import json
import os
from pathlib import Path

import numpy as np
import pytest

from tests.helpers import matrix_file_payload
from twoqubit_eof.config import get_settings
from twoqubit_eof.quantum.states import (
    DensityMatrix,
    basis_state,
    bell_state,
    maximally_mixed,
    singlet,
    werner,
)


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test sees settings built from its own environment."""
    for key in list(os.environ):
        if key.startswith("TWOQUBIT_EOF_"):
            monkeypatch.delenv(key)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def singlet_rho() -> DensityMatrix:
    return DensityMatrix.from_pure(singlet())


@pytest.fixture
def identity_rho() -> DensityMatrix:
    return maximally_mixed()


@pytest.fixture
def werner_half() -> DensityMatrix:
    return werner(0.5)


@pytest.fixture
def phi_plus_up_up() -> DensityMatrix:
    """0.5 |phi+><phi+| + 0.5 |up-up><up-up|, a rank-2 entangled state."""
    return DensityMatrix(
        matrix=0.5 * bell_state("phi+").projector() + 0.5 * basis_state("up-up").projector()
    )


@pytest.fixture
def write_matrices(tmp_path: Path):
    """Write labeled matrices as a matrix file and return its path."""

    def write(matrices: dict[str, np.ndarray], name: str = "input.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(matrix_file_payload(matrices)), encoding="utf-8")
        return path

    return write
