"""Minimum-read plan search on small instances.

``exhaustive`` mode walks every assignment of read sets, cheapest first, so
its answer is the true minimum read bandwidth of the given pair. ``prefix``
mode only considers reading the first ``beta_j`` subsymbols of each symbol;
it is an upper-bound heuristic and never claims optimality.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .bounds import lower_bound
from .code_model import ConvertiblePair, encode_final, split_message
from .conversion import ReadPlan, build_restricted, convert, derive_transform
from .exceptions import InternalCheckFailed, SpaceTooLarge
from .ff_linalg import column_space_contains

log = logging.getLogger(__name__)

EXHAUSTIVE = "exhaustive"
PREFIX_ONLY = "prefix"
MAX_EXHAUSTIVE_BITS = 24


@dataclass(frozen=True)
class SearchConfig:
    mode: str = EXHAUSTIVE
    max_read: int | None = None
    max_plans: int | None = None

    def __post_init__(self):
        if self.mode not in (EXHAUSTIVE, PREFIX_ONLY):
            raise ValueError(f"unknown search mode {self.mode!r}")


@dataclass(frozen=True)
class SearchResult:
    best_plan: ReadPlan
    best_cost: int
    exhaustive: bool
    plans_checked: int
    mode: str

    def to_json(self) -> dict:
        return {"best_plan": self.best_plan.to_json()["D"], "best_cost": self.best_cost,
                "exhaustive": self.exhaustive, "plans_checked": self.plans_checked, "mode": self.mode}


def plans_with_cost(n: int, ell: int, cost: int, *, prefix: bool = False) -> Iterator[tuple[int, ...]]:
    """Mask tuples of ``n`` symbols with ``cost`` set bits, in lexicographic order."""
    if prefix:
        choices = [(1 << b) - 1 for b in range(ell + 1)]
    else:
        choices = list(range(1 << ell))
    weight = [bin(m).count("1") for m in range(1 << ell)]
    out = [0] * n

    def rec(j: int, left: int):
        if j == n:
            if left == 0:
                yield tuple(out)
            return
        room = (n - j - 1) * ell
        for m in choices:
            w = weight[m]
            if w <= left and left - w <= room:
                out[j] = m
                yield from rec(j + 1, left - w)

    if 0 <= cost <= n * ell:
        yield from rec(0, cost)


def is_feasible(pair: ConvertiblePair, plan: ReadPlan) -> bool:
    rm = build_restricted(pair, plan)
    return column_space_contains(rm.B_tilde, rm.C_tilde)


def min_read_search(pair: ConvertiblePair, config: SearchConfig = SearchConfig()) -> SearchResult:
    """Cheapest feasible read plan, ties broken by the smallest mask encoding."""
    pr = pair.params
    bits = pr.nI * pr.ell
    prefix = config.mode == PREFIX_ONLY
    if not prefix and bits > MAX_EXHAUSTIVE_BITS and config.max_plans is None:
        raise SpaceTooLarge(
            f"exhaustive search over 2^{bits} plans exceeds the 2^{MAX_EXHAUSTIVE_BITS} cap; "
            "use prefix mode or set max_plans")
    top = bits if config.max_read is None else min(config.max_read, bits)
    checked = 0
    started = time.monotonic()
    for c in range(top + 1):
        for masks in plans_with_cost(pr.nI, pr.ell, c, prefix=prefix):
            if config.max_plans is not None and checked >= config.max_plans:
                raise SpaceTooLarge(f"no feasible plan within the first {checked} plans")
            checked += 1
            plan = ReadPlan.from_masks(masks, pr.ell)
            if is_feasible(pair, plan):
                return SearchResult(plan, c, not prefix, checked, config.mode)
        rate = checked / max(time.monotonic() - started, 1e-9)
        log.info("cost frontier %d exhausted: %d plans checked (%.0f plans/s)", c, checked, rate)
    if top < bits:
        raise SpaceTooLarge(f"no feasible plan with read cost <= {top}")
    raise InternalCheckFailed("even the full-read plan is infeasible; the pair cannot be MDS")


@dataclass(frozen=True)
class AchievabilityReport:
    cost: int
    bound: Fraction
    regime: str
    messages_checked: int
    conversions_ok: bool

    @property
    def gap(self) -> Fraction:
        return self.cost - self.bound

    @property
    def sound(self) -> bool:
        return self.cost >= self.bound

    def to_json(self) -> dict:
        return {"cost": self.cost, "bound": {"num": self.bound.numerator, "den": self.bound.denominator},
                "regime": self.regime, "gap": {"num": self.gap.numerator, "den": self.gap.denominator},
                "sound": self.sound, "messages_checked": self.messages_checked,
                "conversions_ok": self.conversions_ok}


def conversion_matches(pair: ConvertiblePair, plan: ReadPlan, n_messages: int, seed: int) -> bool:
    """Convert random messages through ``plan`` and compare with direct final encoding."""
    pr = pair.params
    t = derive_transform(pair, plan)
    rng = np.random.default_rng(seed)
    for _ in range(n_messages):
        m = rng.integers(0, pr.p, size=pr.kI * pr.ell)
        got = convert(pair, plan, t, m)
        for word, seg in zip(got, split_message(pr, m)):
            want = encode_final(pair, seg)
            if not all(np.array_equal(a, b) for a, b in zip(word, want)):
                return False
    return True


def verify_achievability(pair: ConvertiblePair, result: SearchResult, n_messages: int = 20,
                         seed: int = 0) -> AchievabilityReport:
    ok = conversion_matches(pair, result.best_plan, n_messages, seed)
    b = lower_bound(pair.params)
    return AchievabilityReport(result.best_cost, b.value, b.regime, n_messages, ok)
