"""Array-backed value types shared by the numerical modules."""

from typing import Any

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict

ComplexMatrix = npt.NDArray[np.complex128]
RealVector = npt.NDArray[np.float64]

MAX_DIM = 4


def frozen_array(value: Any, dtype: type = np.complex128) -> np.ndarray:
    """Copy value into a read-only numpy array of the given dtype."""
    arr = np.array(value, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


def as_complex_matrix(value: Any, max_dim: int = MAX_DIM) -> ComplexMatrix:
    """Validate a square complex matrix of dimension 1..max_dim with finite entries."""
    arr = np.asarray(value, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not 1 <= arr.shape[0] <= max_dim:
        raise ValueError(f"matrix dimension {arr.shape[0]} outside 1..{max_dim}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


class ArrayModel(BaseModel):
    """Frozen pydantic model that may hold numpy arrays."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)
