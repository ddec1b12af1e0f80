"""Input validation helpers for array inputs."""
from __future__ import annotations

import numpy as np

from .exceptions import DimensionMismatch


def check_codewords(X, p: int, n_features: int) -> np.ndarray:
    """Validate a batch of flattened codewords and reduce it into ``[0, p)``.

    Accepts anything ``numpy.asarray`` understands. A single 1-D codeword is
    promoted to a batch of one. Non-integer input is rejected rather than
    rounded.
    """
    arr = np.asarray(X)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D array of codewords, got ndim={arr.ndim}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        if arr.dtype == object and all(isinstance(v, (int, np.integer)) for v in arr.flat):
            pass
        else:
            raise TypeError(f"codewords must be integer-valued, got dtype {arr.dtype}")
    if arr.shape[1] != n_features:
        raise DimensionMismatch(f"codewords have {arr.shape[1]} entries, expected {n_features}")
    return np.asarray([[int(v) % p for v in row] for row in arr], dtype=np.int64).reshape(arr.shape)


def check_matrix_shape(rows, shape: tuple[int, int], name: str) -> None:
    """Raise unless a nested list has exactly ``shape``."""
    if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
        got = (len(rows), len(rows[0]) if rows else 0)
        raise DimensionMismatch(f"{name} has shape {got}, expected {shape}")
