import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convertbw.exceptions import BadParams, DimensionMismatch, IndexOutOfRange, NoSolution, ZeroInverse
from convertbw.ff_linalg import (
    FFMatrix,
    check_prime,
    column_space_contains,
    fe_inv,
    hconcat,
    is_invertible,
    rank,
    solve_right,
    submatrix,
)

from conftest import brute_rank


def M(rows, p=43):
    return FFMatrix.from_rows(rows, p)


@pytest.mark.parametrize("a,p,want", [(2, 43, 22), (1, 43, 1), (1, 2, 1), (1, 7, 1), (42, 43, 42)])
def test_fe_inv_examples(a, p, want):
    assert fe_inv(a, p) == want


def test_fe_inv_zero():
    with pytest.raises(ZeroInverse):
        fe_inv(0, 43)
    with pytest.raises(ZeroInverse):
        fe_inv(43, 43)


@pytest.mark.parametrize("p", [2, 3, 7, 43])
def test_fe_inv_all_residues(p):
    for a in range(1, p):
        inv = fe_inv(a, p)
        assert a * inv % p == 1
        assert fe_inv(inv, p) == a


def test_check_prime():
    assert check_prime(43) == 43
    for bad in (0, 1, 4, 45, 2**31 + 11):
        with pytest.raises(BadParams):
            check_prime(bad)


def test_negative_entries_reduced():
    m = M([[-1, -5], [5, 0]])
    assert m.tolist() == [[42, 38], [5, 0]]


def test_rank_examples():
    assert rank(FFMatrix.identity(4, 43)) == 4
    assert rank(FFMatrix.zeros(3, 5, 43)) == 0
    assert rank(M([[1, 2], [2, 4]])) == 1
    assert rank(FFMatrix.zeros(0, 4, 43)) == 0
    assert rank(FFMatrix.zeros(4, 0, 43)) == 0


def test_submatrix_examples(example):
    i4 = FFMatrix.identity(4, 43)
    assert submatrix(i4, [0, 1], [0, 1]) == FFMatrix.identity(2, 43)
    empty = submatrix(i4, [], range(4))
    assert empty.shape == (0, 4)
    assert submatrix(i4, [2, 0], [0]).tolist() == [[0], [1]]
    pair, _, _ = example
    cols = [4 * j + t for j in range(4) for t in (0, 1)]
    part = submatrix(pair.B, range(16), cols)
    assert part.shape == (16, 8)
    assert part.tolist()[0] == [2, 2, 3, 42, 2, 41, 2, 40]


def test_submatrix_errors():
    i4 = FFMatrix.identity(4, 43)
    with pytest.raises(IndexOutOfRange):
        submatrix(i4, [4], [0])
    with pytest.raises(IndexOutOfRange):
        submatrix(i4, [0, 0], [0])


def test_hconcat_examples():
    i2 = FFMatrix.identity(2, 43)
    assert hconcat(i2, i2).tolist() == [[1, 0, 1, 0], [0, 1, 0, 1]]
    m = M([[1, 2], [3, 4]])
    assert hconcat(m, FFMatrix.zeros(2, 0, 43)) == m
    with pytest.raises(DimensionMismatch):
        hconcat(FFMatrix.zeros(3, 2, 43), FFMatrix.zeros(4, 2, 43))


def test_column_space_contains_examples(example):
    rng = np.random.default_rng(3)
    assert column_space_contains(FFMatrix.identity(2, 43), FFMatrix(rng.integers(0, 43, (2, 5)), 43))
    assert not column_space_contains(M([[1], [0]]), M([[0], [1]]))
    with pytest.raises(DimensionMismatch):
        column_space_contains(FFMatrix.zeros(2, 1, 43), FFMatrix.zeros(3, 1, 43))


def test_solve_right_examples():
    rng = np.random.default_rng(0)
    b = FFMatrix(rng.integers(0, 43, (4, 3)), 43)
    assert solve_right(FFMatrix.identity(4, 43), b) == b
    with pytest.raises(NoSolution):
        solve_right(M([[0], [0]]), M([[1], [0]]))


def test_solve_right_canonical_zero_free_variables():
    # x2 is free; canonical solution sets it to zero.
    a = M([[1, 0, 1], [0, 1, 1]], 7)
    b = M([[3], [5]], 7)
    x = solve_right(a, b)
    assert x.tolist() == [[3], [5], [0]]


def test_is_invertible_examples():
    assert is_invertible(FFMatrix.identity(3, 43))
    assert not is_invertible(FFMatrix.zeros(2, 3, 43))
    assert is_invertible(FFMatrix.zeros(0, 0, 43))
    assert not is_invertible(M([[1, 2], [2, 4]]))


def test_matmul_large_prime_no_overflow():
    p = 2**31 - 1
    a = FFMatrix(np.full((3, 40), p - 1), p)
    b = FFMatrix(np.full((40, 2), p - 1), p)
    assert (a @ b).tolist() == [[40 % p] * 2] * 3


matrices = st.tuples(st.sampled_from([2, 3, 43]), st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**32 - 1))


def _rand(p, r, c, seed):
    return FFMatrix(np.random.default_rng(seed).integers(0, p, (r, c)), p)


def _low_rank(p, r, c, seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(0, min(r, c) + 1))
    a = rng.integers(0, p, (r, k)) @ rng.integers(0, p, (k, c))
    return FFMatrix(a % p, p)


@settings(max_examples=150, deadline=None)
@given(matrices, st.booleans())
def test_rank_matches_brute_force(draw, low):
    m = (_low_rank if low else _rand)(*draw)
    assert rank(m) == brute_rank(m.data, m.p)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_rank_permutation_invariant(draw):
    m = _low_rank(*draw)
    rng = np.random.default_rng(draw[3] + 1)
    perm = FFMatrix(m.data[rng.permutation(m.rows)][:, rng.permutation(m.cols)], m.p)
    assert rank(perm) == rank(m) <= min(m.shape)


@settings(max_examples=100, deadline=None)
@given(matrices, st.integers(1, 5))
def test_hconcat_rank_bounds_and_inclusion(draw, extra):
    p, r, c, seed = draw
    a = _low_rank(p, r, c, seed)
    b = _low_rank(p, r, extra, seed + 7)
    ab = hconcat(a, b)
    assert max(rank(a), rank(b)) <= rank(ab) <= rank(a) + rank(b)
    both = column_space_contains(a, b) and column_space_contains(b, a)
    assert both == (rank(a) == rank(b) == rank(ab))


@settings(max_examples=100, deadline=None)
@given(matrices, st.integers(1, 4))
def test_solve_right_sound(draw, extra):
    p, r, c, seed = draw
    a = _low_rank(p, r, c, seed)
    b = _rand(p, r, extra, seed + 3)
    try:
        x = solve_right(a, b)
    except NoSolution:
        assert not column_space_contains(a, b)
    else:
        assert a @ x == b
        assert column_space_contains(a, b)
