"""Parameters and systematic generator pairs of split-regime convertible codes.

An initial ``[nI, kI]`` array code with ``kI = lambda * kF`` is split into
``lambda`` final ``[nF, kF]`` codewords. Both codes are systematic: the
initial generator is ``[I | B]`` and the final one ``[I | C]``, with every
symbol made of ``ell`` subsymbols. Indices are 0-based throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .exceptions import BadParams, DimensionMismatch, GenerationFailed, InternalCheckFailed
from .ff_linalg import FFMatrix, check_prime, is_invertible, solve_right, submatrix, vecmat


@dataclass(frozen=True)
class CodeParams:
    """Parameter tuple of a split-regime convertible code.

    Only ``lambda_, kF, rF, rI, ell, p`` are free; ``kI``, ``nI`` and ``nF``
    are derived.
    """

    lambda_: int
    kF: int
    rF: int
    rI: int
    ell: int = 1
    p: int = 2

    @property
    def kI(self) -> int:
        return self.lambda_ * self.kF

    @property
    def nI(self) -> int:
        return self.kI + self.rI

    @property
    def nF(self) -> int:
        return self.kF + self.rF

    def as_dict(self) -> dict:
        return {"lambda": self.lambda_, "kF": self.kF, "rF": self.rF, "rI": self.rI,
                "ell": self.ell, "p": self.p, "kI": self.kI, "nI": self.nI, "nF": self.nF}


def validate_params(lambda_, kF, rF, rI, ell=1, p=2, *, kI=None, check_field=True) -> CodeParams:
    """Normalize raw inputs into a :class:`CodeParams`.

    ``kI`` may be passed to cross-check ``kI = lambda * kF``. Pass
    ``check_field=False`` when only the combinatorial parameters matter
    (bound evaluation never touches the field).
    """
    try:
        lambda_, kF, rF, rI, ell, p = (int(v) for v in (lambda_, kF, rF, rI, ell, p))
    except (TypeError, ValueError) as exc:
        raise BadParams(f"parameters must be integers: {exc}") from None
    if lambda_ < 2:
        raise BadParams(f"lambda must be >= 2 (got {lambda_})")
    for name, v in (("kF", kF), ("rF", rF), ("rI", rI), ("ell", ell)):
        if v < 1:
            raise BadParams(f"{name} must be >= 1 (got {v})")
    if kI is not None and int(kI) != lambda_ * kF:
        raise BadParams(f"kI={kI} differs from lambda*kF={lambda_ * kF}")
    if check_field:
        check_prime(p)
    return CodeParams(lambda_, kF, rF, rI, ell, p)


def _block_cols(blocks: Sequence[int], ell: int) -> list[int]:
    return [b * ell + t for b in blocks for t in range(ell)]


def _mds_by_subsets(n: int, k: int, ell: int, parity: FFMatrix) -> bool:
    # Ground truth: every k of the n symbols of [I | parity] determine the message.
    gen = np.hstack([np.eye(k * ell, dtype=np.int64), parity.data])
    g = FFMatrix(gen, parity.p)
    rows = range(k * ell)
    return all(is_invertible(submatrix(g, rows, _block_cols(S, ell))) for S in combinations(range(n), k))


def _mds_by_superregularity(n: int, k: int, ell: int, parity: FFMatrix) -> bool:
    r = n - k
    for s in range(1, min(k, r) + 1):
        for rs in combinations(range(k), s):
            ri = _block_cols(rs, ell)
            for cs in combinations(range(r), s):
                if not is_invertible(submatrix(parity, ri, _block_cols(cs, ell))):
                    return False
    return True


def is_mds_systematic(n: int, k: int, ell: int, parity: FFMatrix, *, method: str = "both") -> bool:
    """Whether ``[I | parity]`` generates an MDS ``[n, k, ell]`` array code.

    ``method`` selects ``"subsets"`` (the definition: all ``k``-subsets of
    symbols), ``"superregular"`` (all square block submatrices of ``parity``),
    or ``"both"``, which runs the two and insists they agree.
    """
    if parity.shape != (k * ell, (n - k) * ell):
        raise DimensionMismatch(
            f"parity has shape {parity.shape}, expected {(k * ell, (n - k) * ell)}")
    if method == "subsets":
        return _mds_by_subsets(n, k, ell, parity)
    if method == "superregular":
        return _mds_by_superregularity(n, k, ell, parity)
    if method != "both":
        raise ValueError(f"unknown method {method!r}")
    a = _mds_by_subsets(n, k, ell, parity)
    b = _mds_by_superregularity(n, k, ell, parity)
    if a != b:
        raise InternalCheckFailed("subset and superregularity MDS checks disagree")
    return a


@dataclass(frozen=True)
class ConvertiblePair:
    """Parity parts ``B`` (initial) and ``C`` (final) of the systematic generators."""

    params: CodeParams
    B: FFMatrix
    C: FFMatrix

    def __post_init__(self):
        pr = self.params
        want_b = (pr.kI * pr.ell, pr.rI * pr.ell)
        want_c = (pr.kF * pr.ell, pr.rF * pr.ell)
        if self.B.shape != want_b:
            raise DimensionMismatch(f"B has shape {self.B.shape}, expected {want_b}")
        if self.C.shape != want_c:
            raise DimensionMismatch(f"C has shape {self.C.shape}, expected {want_c}")
        if self.B.p != pr.p or self.C.p != pr.p:
            raise DimensionMismatch("B and C must live over the parameter field")

    def B_block(self, i: int, j: int) -> FFMatrix:
        e = self.params.ell
        return FFMatrix(self.B.data[i * e:(i + 1) * e, j * e:(j + 1) * e], self.params.p)

    def C_block(self, i: int, j: int) -> FFMatrix:
        e = self.params.ell
        return FFMatrix(self.C.data[i * e:(i + 1) * e, j * e:(j + 1) * e], self.params.p)

    def is_mds(self) -> bool:
        pr = self.params
        return (is_mds_systematic(pr.nI, pr.kI, pr.ell, self.B)
                and is_mds_systematic(pr.nF, pr.kF, pr.ell, self.C))


def random_mds_pair(params: CodeParams, seed: int = 0, max_attempts: int = 1000) -> ConvertiblePair:
    """Rejection-sample uniform ``B`` and ``C`` until both are MDS.

    Uses ``numpy.random.default_rng`` (PCG64) seeded from a ``SeedSequence``
    spawned into one child per matrix, so ``B`` and ``C`` draw from
    independent streams and the result is a pure function of
    ``(params, seed)``.
    """
    if max_attempts < 1:
        raise ValueError("max_attempts must be >= 1")
    pr = params
    rng_b, rng_c = (np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(2))

    def draw(rng, n, k):
        shape = (k * pr.ell, (n - k) * pr.ell)
        for _ in range(max_attempts):
            m = FFMatrix(rng.integers(0, pr.p, size=shape), pr.p)
            if is_mds_systematic(n, k, pr.ell, m, method="superregular"):
                return m
        raise GenerationFailed(
            f"no MDS [{n},{k},{pr.ell}] parity over F_{pr.p} in {max_attempts} attempts")

    B = draw(rng_b, pr.nI, pr.kI)
    C = draw(rng_c, pr.nF, pr.kF)
    return ConvertiblePair(pr, B, C)


def _encode(parity: FFMatrix, m, k: int, ell: int) -> list[np.ndarray]:
    m = np.asarray(m, dtype=np.int64) % parity.p
    if m.shape != (k * ell,):
        raise DimensionMismatch(f"message of shape {m.shape}, expected ({k * ell},)")
    par = vecmat(m, parity)
    word = np.concatenate([m, par])
    return [word[j * ell:(j + 1) * ell] for j in range(len(word) // ell)]


def encode_initial(pair: ConvertiblePair, m) -> list[np.ndarray]:
    """Encode a length ``kI*ell`` message into ``nI`` symbols of ``ell`` subsymbols."""
    return _encode(pair.B, m, pair.params.kI, pair.params.ell)


def encode_final(pair: ConvertiblePair, m_i) -> list[np.ndarray]:
    """Encode one ``kF*ell`` segment with the final code into ``nF`` symbols."""
    return _encode(pair.C, m_i, pair.params.kF, pair.params.ell)


def split_message(params: CodeParams, m) -> list[np.ndarray]:
    """Cut a message into its ``lambda`` segments of ``kF*ell`` entries."""
    m = np.asarray(m, dtype=np.int64)
    seg = params.kF * params.ell
    if m.shape != (params.kI * params.ell,):
        raise DimensionMismatch(f"message of shape {m.shape}, expected ({params.kI * params.ell},)")
    return [m[i * seg:(i + 1) * seg] for i in range(params.lambda_)]


def decode_from_symbols(pair: ConvertiblePair, symbols: dict[int, np.ndarray]) -> np.ndarray:
    """Recover the message from exactly ``kI`` initial symbols (index -> subsymbols)."""
    pr = pair.params
    if len(symbols) != pr.kI:
        raise DimensionMismatch(f"need exactly {pr.kI} symbols, got {len(symbols)}")
    idx = sorted(symbols)
    gen = FFMatrix(np.hstack([np.eye(pr.kI * pr.ell, dtype=np.int64), pair.B.data]), pr.p)
    g = submatrix(gen, range(gen.rows), _block_cols(idx, pr.ell))
    y = np.concatenate([np.asarray(symbols[j], dtype=np.int64) for j in idx]).reshape(1, -1)
    # m @ g = y  <=>  g^T @ m^T = y^T
    x = solve_right(g.T, FFMatrix(y.T, pr.p))
    return x.data[:, 0]
