from math import comb

import numpy as np
import pytest

from convertbw.bounds import lower_bound
from convertbw.code_model import random_mds_pair, validate_params
from convertbw.conversion import ReadPlan, check_feasible
from convertbw.exceptions import SpaceTooLarge
from convertbw.search import (
    EXHAUSTIVE,
    PREFIX_ONLY,
    SearchConfig,
    SearchResult,
    is_feasible,
    min_read_search,
    plans_with_cost,
    verify_achievability,
)


@pytest.fixture(scope="module")
def tiny():
    return random_mds_pair(validate_params(2, 1, 1, 2, 2, 7), seed=1)


def test_plans_with_cost_counts_and_order():
    for n, ell in [(3, 2), (2, 3), (4, 1)]:
        for c in range(n * ell + 1):
            got = list(plans_with_cost(n, ell, c))
            assert len(got) == comb(n * ell, c)
            assert got == sorted(got)
            assert all(sum(bin(m).count("1") for m in g) == c for g in got)
    assert list(plans_with_cost(2, 2, 5)) == []
    assert list(plans_with_cost(2, 2, 2, prefix=True)) == [(0, 3), (1, 1), (3, 0)]


def test_config_rejects_unknown_mode():
    with pytest.raises(ValueError):
        SearchConfig("greedy")


def test_tiny_exhaustive(tiny):
    res = min_read_search(tiny, SearchConfig(EXHAUSTIVE))
    assert res.best_cost == 4 and res.exhaustive
    assert check_feasible(tiny, res.best_plan).holds
    rep = verify_achievability(tiny, res)
    assert rep.gap == 0 and rep.conversions_ok and rep.sound


def test_exhaustive_matches_brute_minimum(tiny):
    # Independent minimum: scan all 2^8 plans in a shuffled order.
    pr = tiny.params
    rng = np.random.default_rng(0)
    best = None
    for code in rng.permutation(1 << (pr.nI * pr.ell)):
        masks = tuple((int(code) >> (pr.ell * j)) & 3 for j in range(pr.nI))
        plan = ReadPlan.from_masks(masks, pr.ell)
        if is_feasible(tiny, plan):
            key = (plan.read_cost, masks)
            best = key if best is None or key < best else best
    res = min_read_search(tiny)
    assert (res.best_cost, res.best_plan.masks()) == best


def test_prefix_upper_bounds_exhaustive():
    for seed, raw in enumerate([(2, 1, 1, 2, 2, 7), (2, 2, 1, 2, 2, 13), (2, 1, 2, 1, 2, 11)]):
        pair = random_mds_pair(validate_params(*raw), seed=seed)
        ex = min_read_search(pair, SearchConfig(EXHAUSTIVE))
        pf = min_read_search(pair, SearchConfig(PREFIX_ONLY))
        assert not pf.exhaustive
        assert pf.best_cost >= ex.best_cost >= lower_bound(pair.params).value


def test_full_read_found_with_max_read(tiny):
    pr = tiny.params
    res = min_read_search(tiny, SearchConfig(PREFIX_ONLY, max_read=pr.nI * pr.ell))
    assert res.best_cost <= pr.nI * pr.ell
    with pytest.raises(SpaceTooLarge):
        min_read_search(tiny, SearchConfig(EXHAUSTIVE, max_read=1))
    with pytest.raises(SpaceTooLarge):
        min_read_search(tiny, SearchConfig(EXHAUSTIVE, max_plans=3))


def test_exhaustive_cap(example):
    pair, _, _ = example
    with pytest.raises(SpaceTooLarge, match="prefix"):
        min_read_search(pair, SearchConfig(EXHAUSTIVE))


def test_full_read_gap_nonnegative(tiny):
    pr = tiny.params
    res = SearchResult(ReadPlan.full(pr), pr.nI * pr.ell, False, 1, PREFIX_ONLY)
    rep = verify_achievability(tiny, res)
    assert rep.gap == pr.nI * pr.ell - lower_bound(pr).value >= 0


@pytest.mark.slow
def test_worked_example_prefix_search(example):
    pair, plan, _ = example
    res = min_read_search(pair, SearchConfig(PREFIX_ONLY, max_read=8))
    assert res.best_cost == 8
    rep = verify_achievability(pair, res)
    assert rep.gap == 0 and rep.conversions_ok
