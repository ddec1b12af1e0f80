"""Closed-form lower bounds on conversion read bandwidth, as exact rationals.

Three regimes partition the parameter space:

* ``kF <= rF``: read at least ``kI*ell`` (all message data).
* ``rF < kF`` and ``rI <= kF``: two cases split at ``rI = rF``.
* ``rF < kF < rI``: four cases driven by the sign of
  ``lambda*kF**2 - (lambda-1)*(kF-rF)*rI``.

Where several case conditions hold at once every matching formula is
evaluated and they must agree; disagreement raises :class:`CaseConflict`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .code_model import CodeParams
from .exceptions import CaseConflict, IdentityViolation, RegimeMismatch

F = Fraction


@dataclass(frozen=True)
class BoundResult:
    value: Fraction
    regime: str
    matched: tuple[str, ...] = ()

    @property
    def ceiling(self) -> int:
        return math.ceil(self.value)

    def to_json(self) -> dict:
        return {"regime": self.regime, "num": self.value.numerator, "den": self.value.denominator,
                "ceiling": self.ceiling, "matched": list(self.matched)}


def _agree(candidates: list[tuple[str, Fraction]]) -> BoundResult:
    label, value = candidates[0]
    for other, v in candidates[1:]:
        if v != value:
            raise CaseConflict(f"{label} gives {value} but {other} gives {v}")
    return BoundResult(value, label, tuple(lab for lab, _ in candidates))


def bound_thm1(params: CodeParams) -> BoundResult:
    if params.kF > params.rF:
        raise RegimeMismatch("requires k^F <= r^F")
    return BoundResult(F(params.kI * params.ell), "THM1", ("THM1",))


def bound_thm2(params: CodeParams) -> BoundResult:
    lam, kF, rF, rI, ell = params.lambda_, params.kF, params.rF, params.rI, params.ell
    if not rF < kF:
        raise RegimeMismatch("requires r^F < k^F")
    if not rI <= kF:
        raise RegimeMismatch("requires r^I <= k^F")
    cands = []
    if rI <= rF:
        cands.append(("THM2_CASE1", F(lam * kF * ell) - F((kF - rF) * rI * ell, rF)))
    if rF <= rI:
        cands.append(("THM2_CASE2", F(lam * rF * ell * ((lam - 1) * kF + rI), (lam - 1) * rF + rI)))
    return _agree(cands)


def thm3_discriminant(params: CodeParams) -> int:
    lam, kF, rF, rI = params.lambda_, params.kF, params.rF, params.rI
    return lam * kF * kF - (lam - 1) * (kF - rF) * rI


def bound_thm3(params: CodeParams) -> BoundResult:
    lam, kF, rF, rI, ell = params.lambda_, params.kF, params.rF, params.rI, params.ell
    kI = params.kI
    if not rF < kF:
        raise RegimeMismatch("requires r^F < k^F")
    if not kF < rI:
        raise RegimeMismatch("requires k^F < r^I")
    disc = thm3_discriminant(params)
    knee = (lam - 1) * rF + kF
    cands = []
    if kI <= rI:
        cands.append(("THM3_CASE1", F(lam * rF * ell)))
    if kI > rI and disc >= 0:
        cands.append(("THM3_CASE2", F(lam * lam * kF * kF * rF * ell, kF * rI - rF * rI + lam * kF * rF)))
    if rI < knee and disc <= 0:
        cands.append(("THM3_CASE3", rI * ell + F(lam * kF * ((lam - 1) * rF - (rI - kF)) * ell, knee)))
    if kI > rI >= knee and disc <= 0:
        cands.append(("THM3_CASE4", F((lam - 1) * rF * rI * ell, rI - kF)))
    if not cands:
        raise CaseConflict(f"no case matched for {params}")
    return _agree(cands)


def bound_prior(params: CodeParams) -> BoundResult:
    """The earlier uniform-download bound this work is compared against."""
    lam, kF, rF, rI, ell = params.lambda_, params.kF, params.rF, params.rI, params.ell
    if rI <= lam * rF:
        return BoundResult(F(lam * kF * ell) - rI * ell * max(F(kF, rF) - 1, F(0)), "PRIOR_LOW")
    return BoundResult(F(lam * min(rF, kF) * ell), "PRIOR_HIGH")


def lower_bound(params: CodeParams) -> BoundResult:
    if params.kF <= params.rF:
        return bound_thm1(params)
    if params.rI <= params.kF:
        return bound_thm2(params)
    return bound_thm3(params)


BOUNDS = {"auto": lower_bound, "thm1": bound_thm1, "thm2": bound_thm2,
          "thm3": bound_thm3, "prior": bound_prior}


@dataclass(frozen=True)
class Comparison:
    ours: BoundResult
    prior: BoundResult

    @property
    def delta(self) -> Fraction:
        return self.ours.value - self.prior.value

    @property
    def strict(self) -> bool:
        return self.delta > 0


def compare(params: CodeParams) -> Comparison:
    return Comparison(lower_bound(params), bound_prior(params))


def strictness_claimed(params: CodeParams) -> bool:
    """Whether the new bound beats the prior one strictly.

    True on the ``rF < kF < rI < kI`` part of the third regime and in the
    second case of the middle regime with ``rI > rF``, where the ratio
    prior/ours is ``1 - (positive)``. Everywhere else the two coincide.
    """
    kF, rF, rI = params.kF, params.rF, params.rI
    if rF < kF < rI < params.kI:
        return True
    return rF < rI <= kF


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: Fraction
    rhs: Fraction
    inequality: str = ""
    inequality_holds: bool = True

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs and self.inequality_holds


@dataclass
class IdentityReport:
    params: CodeParams
    checks: list[IdentityCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)


def comparison_identities(params: CodeParams, *, strict: bool = True) -> IdentityReport:
    """Evaluate both sides of each comparison identity that applies to ``params``.

    Ratios are prior/ours unless noted. With ``strict`` any failing identity
    raises :class:`IdentityViolation`.
    """
    lam, kF, rF, rI, ell = params.lambda_, params.kF, params.rF, params.rI, params.ell
    kI = params.kI
    rep = IdentityReport(params)
    prior = bound_prior(params).value
    add = rep.checks.append

    if rF < kF and rF <= rI <= kF:
        ours = bound_thm2(params).value
        if rI <= lam * rF:
            rhs = 1 - F(rI * (kF - rF) * (rI - rF), lam * rF * rF * ((lam - 1) * kF + rI))
            add(IdentityCheck("thm2_ratio_low", prior / ours, rhs, "<= 1", rhs <= 1))
        else:
            rhs = F((lam - 1) * rF + rI, (lam - 1) * kF + rI)
            add(IdentityCheck("thm2_ratio_high", prior / ours, rhs, "<= 1", rhs <= 1))

    if rF < kF < rI < kI:
        # Here the prior bound is lambda*rF*ell when rI >= lambda*rF and its
        # first branch otherwise; each item compares against it directly.
        disc = thm3_discriminant(params)
        knee = (lam - 1) * rF + kF
        if disc >= 0:
            case2 = F(lam * lam * kF * kF * rF * ell, kF * rI - rF * rI + lam * kF * rF)
            if rI >= lam * rF:
                rhs = F(rI * (kF - rF) + lam * kF * rF, lam * kF * (kF - rF) + lam * kF * rF)
                add(IdentityCheck("thm3_item1", prior / case2, rhs, "< 1", rhs < 1))
            else:
                rhs = F((lam * kF * rF) ** 2 - (rI * (kF - rF)) ** 2, (lam * kF * rF) ** 2)
                add(IdentityCheck("thm3_item2", prior / case2, rhs, "< 1", rhs < 1))
        if rI < knee and disc <= 0:
            case3 = rI * ell + F(lam * kF * ((lam - 1) * rF - (rI - kF)) * ell, knee)
            if rI >= lam * rF:
                rhs = rI * ell + lam * kF * (1 - F(rI, knee)) * ell
                add(IdentityCheck("thm3_item3", case3, rhs, "> prior", rhs > prior))
            else:
                # Denominator is (lambda-1)*rF + kF, as in the case-3 bound itself.
                rhs = lam * kF * ell - rI * ell * (F(lam * kF, knee) - 1)
                add(IdentityCheck("thm3_item4", case3, rhs, "> prior", rhs > prior))
        if rI >= knee and disc <= 0:
            case4 = F((lam - 1) * rF * rI * ell, rI - kF)
            rhs = F(lam * rI - kI, (lam - 1) * rI)
            add(IdentityCheck("thm3_item5", prior / case4, rhs, "< 1", rhs < 1))

    if strict:
        bad = [c for c in rep.checks if not c.holds]
        if bad:
            c = bad[0]
            raise IdentityViolation(f"{c.name}: {c.lhs} vs {c.rhs} ({c.inequality})")
    return rep
