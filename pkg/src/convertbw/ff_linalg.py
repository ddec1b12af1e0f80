"""Exact dense linear algebra over a prime field F_p.

Field elements are plain Python/numpy integers in ``[0, p)``. Matrices are
wrapped in :class:`FFMatrix`, an immutable pairing of an ``int64`` array with
its modulus. All algorithms are plain Gaussian elimination; nothing here uses
floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .exceptions import (
    BadParams,
    DimensionMismatch,
    IndexOutOfRange,
    NoSolution,
    ZeroInverse,
)

# Keeps every product of two residues below 2**62 so int64 never overflows.
MAX_PRIME = 2**31 - 1


@lru_cache(maxsize=256)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    p = int(p)
    if not is_prime(p):
        raise BadParams(f"field modulus {p} is not prime")
    if p > MAX_PRIME:
        raise BadParams(f"field modulus {p} exceeds the supported maximum {MAX_PRIME}")
    return p


def fe_inv(a: int, p: int) -> int:
    """Multiplicative inverse of ``a`` modulo the prime ``p``."""
    a = int(a) % p
    if a == 0:
        raise ZeroInverse("0 has no inverse")
    return pow(a, p - 2, p)


@dataclass(frozen=True, eq=False)
class FFMatrix:
    """Immutable ``rows x cols`` matrix over F_p.

    Zero-dimension matrices are legal; they show up whenever a read plan
    removes every row or selects no column.
    """

    data: np.ndarray
    p: int

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            raise DimensionMismatch(f"expected a 2-D array, got ndim={arr.ndim}")
        arr %= self.p
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int, cols: int | None = None) -> "FFMatrix":
        """Build from nested lists; signed entries are reduced into ``[0, p)``."""
        rows = [list(r) for r in rows]
        if not rows:
            return cls.zeros(0, cols or 0, p)
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        arr = np.array([[int(v) % p for v in r] for r in rows], dtype=np.int64).reshape(len(rows), width)
        return cls(arr, p)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FFMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p: int) -> "FFMatrix":
        return cls(np.eye(n, dtype=np.int64), p)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __eq__(self, other):
        if not isinstance(other, FFMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.p, self.shape, self.data.tobytes()))

    def __repr__(self):
        return f"FFMatrix({self.rows}x{self.cols} over F_{self.p})"

    def __add__(self, other: "FFMatrix") -> "FFMatrix":
        _same_field(self, other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return FFMatrix(self.data + other.data, self.p)

    def __sub__(self, other: "FFMatrix") -> "FFMatrix":
        _same_field(self, other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return FFMatrix(self.data - other.data, self.p)

    def __matmul__(self, other: "FFMatrix") -> "FFMatrix":
        _same_field(self, other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return FFMatrix(matmul_mod(self.data, other.data, self.p), self.p)

    @property
    def T(self) -> "FFMatrix":
        return FFMatrix(self.data.T, self.p)


def _same_field(a: FFMatrix, b: FFMatrix) -> None:
    if a.p != b.p:
        raise DimensionMismatch(f"field mismatch: F_{a.p} vs F_{b.p}")


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``a @ b mod p`` without int64 overflow."""
    inner = a.shape[-1] if a.ndim else 0
    if inner * (p - 1) ** 2 < 2**63:
        return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p
    prod = np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)
    return (prod % p).astype(np.int64)


def vecmat(v: Sequence[int], m: FFMatrix) -> np.ndarray:
    """Row vector times matrix, returned as an int64 vector."""
    v = np.asarray(v, dtype=np.int64).reshape(1, -1) % m.p
    if v.shape[1] != m.rows:
        raise DimensionMismatch(f"vector of length {v.shape[1]} against {m.rows} rows")
    return matmul_mod(v, m.data, m.p)[0]


def rref(m: FFMatrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and the list of pivot columns."""
    p = m.p
    a = m.data.copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * fe_inv(int(a[r, c]), p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: FFMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # Eliminate along the shorter dimension.
    if m.cols < m.rows:
        m = m.T
    return len(rref(m)[1])


def _check_indices(idx: Iterable[int], bound: int, what: str) -> list[int]:
    idx = [int(i) for i in idx]
    if len(set(idx)) != len(idx):
        raise IndexOutOfRange(f"duplicate {what} indices: {idx}")
    bad = [i for i in idx if not 0 <= i < bound]
    if bad:
        raise IndexOutOfRange(f"{what} indices {bad} out of range [0, {bound})")
    return idx


def submatrix(m: FFMatrix, row_indices: Iterable[int], col_indices: Iterable[int]) -> FFMatrix:
    """Select rows and columns in the given order."""
    ri = _check_indices(row_indices, m.rows, "row")
    ci = _check_indices(col_indices, m.cols, "column")
    return FFMatrix(m.data[np.ix_(ri, ci)].reshape(len(ri), len(ci)), m.p)


def hconcat(*ms: FFMatrix) -> FFMatrix:
    if not ms:
        raise DimensionMismatch("hconcat needs at least one matrix")
    for other in ms[1:]:
        _same_field(ms[0], other)
        if other.rows != ms[0].rows:
            raise DimensionMismatch(f"hconcat row mismatch: {ms[0].rows} vs {other.rows}")
    cols = sum(x.cols for x in ms)
    return FFMatrix(np.hstack([x.data for x in ms]).reshape(ms[0].rows, cols), ms[0].p)


def vconcat(*ms: FFMatrix) -> FFMatrix:
    if not ms:
        raise DimensionMismatch("vconcat needs at least one matrix")
    for other in ms[1:]:
        _same_field(ms[0], other)
        if other.cols != ms[0].cols:
            raise DimensionMismatch(f"vconcat column mismatch: {ms[0].cols} vs {other.cols}")
    rows = sum(x.rows for x in ms)
    return FFMatrix(np.vstack([x.data for x in ms]).reshape(rows, ms[0].cols), ms[0].p)


def block_diag(*ms: FFMatrix) -> FFMatrix:
    if not ms:
        raise DimensionMismatch("block_diag needs at least one matrix")
    p = ms[0].p
    out = np.zeros((sum(x.rows for x in ms), sum(x.cols for x in ms)), dtype=np.int64)
    r = c = 0
    for x in ms:
        _same_field(ms[0], x)
        out[r:r + x.rows, c:c + x.cols] = x.data
        r += x.rows
        c += x.cols
    return FFMatrix(out, p)


def column_space_contains(a: FFMatrix, b: FFMatrix) -> bool:
    """True iff every column of ``b`` lies in the column span of ``a``."""
    if a.rows != b.rows:
        raise DimensionMismatch(f"row mismatch: {a.rows} vs {b.rows}")
    return rank(a) == rank(hconcat(a, b))


def solve_right(a: FFMatrix, b: FFMatrix) -> FFMatrix:
    """Return ``x`` with ``a @ x == b``.

    Free variables are set to zero after reduction, so the answer is
    deterministic. Raises :class:`NoSolution` if some column of ``b`` is
    outside the column space of ``a``.
    """
    if a.rows != b.rows:
        raise DimensionMismatch(f"row mismatch: {a.rows} vs {b.rows}")
    n = a.cols
    x = np.zeros((n, b.cols), dtype=np.int64)
    if a.rows == 0:
        return FFMatrix(x, a.p)
    reduced, pivots = rref(hconcat(a, b))
    if pivots and pivots[-1] >= n:
        raise NoSolution(f"column {pivots[-1] - n} of the right-hand side is outside the column space")
    for i, c in enumerate(pivots):
        x[c] = reduced[i, n:]
    return FFMatrix(x, a.p)


def is_invertible(m: FFMatrix) -> bool:
    if m.rows != m.cols:
        return False
    return rank(m) == m.rows
