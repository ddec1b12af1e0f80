"""Read plans, restricted matrices, feasibility, and linear conversion.

A read plan lists, for each of the ``nI`` initial symbols, which of its
``ell`` subsymbols are downloaded. The plan admits a linear conversion iff
the column space of the restricted final parity ``C~`` lies inside that of
the restricted initial parity ``B~``; in that case a transform ``T`` with
``G~ @ T = blockdiag(C, ..., C)`` exists, where ``G~`` is ``[I | B]`` cut
down to the read columns.

Unchanged symbols are placed deterministically: initial symbol
``i*kF + u`` becomes systematic symbol ``u`` of final codeword ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .code_model import CodeParams, ConvertiblePair, encode_initial, split_message
from .exceptions import DimensionMismatch, Infeasible, InternalCheckFailed, NoSolution
from .ff_linalg import (
    FFMatrix,
    block_diag,
    column_space_contains,
    matmul_mod,
    rank,
    solve_right,
    submatrix,
)
from .validation import check_codewords


@dataclass(frozen=True)
class ReadPlan:
    """Per-symbol read sets ``D[j]``, stored as sorted tuples."""

    D: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        norm = []
        for j, d in enumerate(self.D):
            d = tuple(int(t) for t in d)
            if len(set(d)) != len(d):
                raise DimensionMismatch(f"D[{j}] has duplicate indices: {list(d)}")
            if any(t < 0 for t in d):
                raise DimensionMismatch(f"D[{j}] has a negative index: {list(d)}")
            norm.append(tuple(sorted(d)))
        object.__setattr__(self, "D", tuple(norm))

    @classmethod
    def from_lists(cls, D: Iterable[Iterable[int]]) -> "ReadPlan":
        return cls(tuple(tuple(d) for d in D))

    @classmethod
    def full(cls, params: CodeParams) -> "ReadPlan":
        return cls(tuple(tuple(range(params.ell)) for _ in range(params.nI)))

    @classmethod
    def empty(cls, params: CodeParams) -> "ReadPlan":
        return cls(tuple(() for _ in range(params.nI)))

    @classmethod
    def from_betas(cls, betas: Sequence[int]) -> "ReadPlan":
        """Prefix plan reading the first ``betas[j]`` subsymbols of symbol ``j``."""
        return cls(tuple(tuple(range(b)) for b in betas))

    @classmethod
    def from_masks(cls, masks: Sequence[int], ell: int) -> "ReadPlan":
        return cls(tuple(tuple(t for t in range(ell) if m >> t & 1) for m in masks))

    @property
    def beta(self) -> tuple[int, ...]:
        return tuple(len(d) for d in self.D)

    @property
    def read_cost(self) -> int:
        return sum(self.beta)

    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << t for t in d) for d in self.D)

    def unread(self, j: int, ell: int) -> tuple[int, ...]:
        have = set(self.D[j])
        return tuple(t for t in range(ell) if t not in have)

    def check_for(self, params: CodeParams) -> None:
        if len(self.D) != params.nI:
            raise DimensionMismatch(f"plan has {len(self.D)} entries, expected nI={params.nI}")
        for j, d in enumerate(self.D):
            if d and d[-1] >= params.ell:
                raise DimensionMismatch(f"D[{j}] index {d[-1]} out of range [0, {params.ell})")

    def to_json(self) -> dict:
        return {"D": [list(d) for d in self.D]}


@dataclass(frozen=True)
class RestrictedMatrices:
    B_tilde: FFMatrix
    C_tilde: FFMatrix
    B_blocks: tuple[FFMatrix, ...]
    C_blocks: tuple[FFMatrix, ...]

    @property
    def row_count_unread(self) -> int:
        return self.B_tilde.rows

    @property
    def col_count_read(self) -> int:
        return self.B_tilde.cols


def _unread_rows(plan: ReadPlan, blocks: Iterable[int], ell: int, offset: int = 0) -> list[int]:
    return [(j - offset) * ell + t for j in blocks for t in plan.unread(j, ell)]


def build_restricted(pair: ConvertiblePair, plan: ReadPlan) -> RestrictedMatrices:
    pr = pair.params
    plan.check_for(pr)
    ell, kF = pr.ell, pr.kF
    read_cols = [(j - pr.kI) * ell + t for j in range(pr.kI, pr.nI) for t in plan.D[j]]
    all_c_cols = range(pair.C.cols)

    C_blocks, B_blocks = [], []
    for i in range(pr.lambda_):
        local = range(i * kF, (i + 1) * kF)
        # C's block row u pairs with initial symbol i*kF + u.
        c_rows = [u * ell + t for u in range(kF) for t in plan.unread(i * kF + u, ell)]
        C_blocks.append(submatrix(pair.C, c_rows, all_c_cols))
        B_blocks.append(submatrix(pair.B, _unread_rows(plan, local, ell), read_cols))

    B_tilde = submatrix(pair.B, _unread_rows(plan, range(pr.kI), ell), read_cols)
    return RestrictedMatrices(B_tilde, block_diag(*C_blocks), tuple(B_blocks), tuple(C_blocks))


@dataclass(frozen=True)
class FeasibilityReport:
    holds: bool
    rank_B: int
    rank_C: int
    B_full_col_rank: bool
    rows: int
    cols: int

    def to_json(self) -> dict:
        return {"holds": self.holds, "rank_B": self.rank_B, "rank_C": self.rank_C,
                "B_full_col_rank": self.B_full_col_rank, "rows": self.rows, "cols": self.cols}


def check_feasible(pair: ConvertiblePair, plan: ReadPlan) -> FeasibilityReport:
    """Decide whether ``plan`` admits a linear conversion.

    Full column rank of ``B~`` is reported but not required; read-minimal
    plans always have it.
    """
    rm = build_restricted(pair, plan)
    rb, rc = rank(rm.B_tilde), rank(rm.C_tilde)
    holds = column_space_contains(rm.B_tilde, rm.C_tilde)
    return FeasibilityReport(holds, rb, rc, rb == rm.B_tilde.cols, rm.B_tilde.rows, rm.B_tilde.cols)


def read_columns(params: CodeParams, plan: ReadPlan) -> list[int]:
    """Positions of the read subsymbols inside a flattened initial codeword."""
    return [j * params.ell + t for j in range(params.nI) for t in plan.D[j]]


def restricted_generator(pair: ConvertiblePair, plan: ReadPlan) -> FFMatrix:
    """``[I | B]`` restricted to the columns of the read subsymbols."""
    pr = pair.params
    gen = FFMatrix(np.hstack([np.eye(pr.kI * pr.ell, dtype=np.int64), pair.B.data]), pr.p)
    return submatrix(gen, range(gen.rows), read_columns(pr, plan))


@dataclass(frozen=True)
class Transform:
    T: FFMatrix
    plan: ReadPlan


def derive_transform(pair: ConvertiblePair, plan: ReadPlan) -> Transform:
    """Solve ``G~ @ T = blockdiag(C, ..., C)`` for the canonical ``T``."""
    plan.check_for(pair.params)
    g = restricted_generator(pair, plan)
    target = block_diag(*[pair.C] * pair.params.lambda_)
    try:
        T = solve_right(g, target)
    except NoSolution as exc:
        raise Infeasible(f"read plan admits no linear conversion: {exc}") from None
    if g @ T != target:
        raise InternalCheckFailed("derived transform does not reproduce blockdiag(C, ..., C)")
    return Transform(T, plan)


def convert_codeword(pair: ConvertiblePair, t: Transform, symbols: Sequence[np.ndarray]) -> list[list[np.ndarray]]:
    """Turn the ``nI`` initial symbols into ``lambda`` final codewords.

    Only the subsymbols named by ``t.plan`` are touched, apart from copying
    the unchanged systematic symbols.
    """
    pr = pair.params
    if len(symbols) != pr.nI:
        raise DimensionMismatch(f"expected {pr.nI} symbols, got {len(symbols)}")
    word = np.concatenate([np.asarray(s, dtype=np.int64) for s in symbols]) % pr.p
    read = word[read_columns(pr, t.plan)].reshape(1, -1)
    if read.shape[1] != t.T.rows:
        raise DimensionMismatch("transform does not match the read plan")
    new = matmul_mod(read, t.T.data, pr.p)[0]
    ell, per = pr.ell, pr.rF * pr.ell
    out = []
    for i in range(pr.lambda_):
        kept = [np.asarray(symbols[i * pr.kF + u], dtype=np.int64) % pr.p for u in range(pr.kF)]
        fresh = new[i * per:(i + 1) * per]
        out.append(kept + [fresh[s * ell:(s + 1) * ell] for s in range(pr.rF)])
    return out


def convert(pair: ConvertiblePair, plan: ReadPlan, t: Transform, m) -> list[list[np.ndarray]]:
    """Encode ``m`` with the initial code, then convert to ``lambda`` final codewords."""
    if t.plan != plan:
        raise DimensionMismatch("transform was derived for a different plan")
    split_message(pair.params, m)
    return convert_codeword(pair, t, encode_initial(pair, m))


@dataclass(frozen=True)
class CostReport:
    read: int
    write: int

    @property
    def total(self) -> int:
        return self.read + self.write

    def to_json(self) -> dict:
        return {"read": self.read, "write": self.write, "total": self.total}


def cost(plan: ReadPlan, params: CodeParams) -> CostReport:
    plan.check_for(params)
    return CostReport(read=plan.read_cost, write=params.lambda_ * params.rF * params.ell)


class Converter(TransformerMixin, BaseEstimator):
    """Batch converter from initial codewords to final codewords.

    ``fit`` takes a :class:`ConvertiblePair` and derives the transform for
    ``plan`` (``None`` means read everything). ``transform`` takes an
    ``(n_samples, nI*ell)`` array of flattened initial codewords and returns
    an ``(n_samples, lambda*nF*ell)`` array of the concatenated final
    codewords.

    Parameters
    ----------
    plan : ReadPlan or nested list, optional
        Read sets per initial symbol.
    verify : bool
        Re-run the feasibility check after deriving the transform.
    """

    def __init__(self, plan=None, verify=True):
        self.plan = plan
        self.verify = verify

    def fit(self, X, y=None):
        if not isinstance(X, ConvertiblePair):
            raise TypeError(f"fit expects a ConvertiblePair, got {type(X).__name__}")
        pr = X.params
        if self.plan is None:
            plan = ReadPlan.full(pr)
        elif isinstance(self.plan, ReadPlan):
            plan = self.plan
        else:
            plan = ReadPlan.from_lists(self.plan)
        self.pair_ = X
        self.plan_ = plan
        self.transform_ = derive_transform(X, plan)
        if self.verify:
            self.feasibility_ = check_feasible(X, plan)
            if not self.feasibility_.holds:
                raise InternalCheckFailed("transform exists but inclusion test failed")
        self.cost_ = cost(plan, pr)
        self.n_features_in_ = pr.nI * pr.ell
        return self

    def transform(self, X):
        check_is_fitted(self, "transform_")
        pr = self.pair_.params
        X = check_codewords(X, pr.p, self.n_features_in_)
        ell = pr.ell
        out = np.empty((X.shape[0], pr.lambda_ * pr.nF * ell), dtype=np.int64)
        for n, row in enumerate(X):
            symbols = [row[j * ell:(j + 1) * ell] for j in range(pr.nI)]
            words = convert_codeword(self.pair_, self.transform_, symbols)
            out[n] = np.concatenate([s for w in words for s in w])
        return out
