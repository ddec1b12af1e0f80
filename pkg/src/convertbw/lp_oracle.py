"""Exact two-variable LP solver used as an oracle for the closed-form bounds.

Every read-bandwidth LP here depends on the plan only through
``x = sum(beta[:kI])`` (reads from unchanged symbols) and
``y = sum(beta[kI:])`` (reads from retired symbols). Any point of the box
``0 <= x <= kI*ell, 0 <= y <= rI*ell`` is realised by some integer-free
choice of per-symbol ``0 <= beta_j <= ell`` (spread ``x`` evenly over the
``kI`` unchanged symbols and ``y`` over the ``rI`` retired ones), so the
aggregated LP has the same optimum as the per-symbol one.

The solver enumerates all pairwise intersections of boundary lines and keeps
the cheapest feasible one. With at most a handful of lines this is both
exact and independent of any case analysis.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .code_model import CodeParams
from .exceptions import BadParams, LpInfeasible, RegimeMismatch

F = Fraction


@dataclass(frozen=True)
class Constraint:
    """``a*x + b*y >= c``."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, F(getattr(self, name)))
        if self.a == 0 and self.b == 0:
            raise BadParams("degenerate constraint with a = b = 0")

    def holds(self, x: Fraction, y: Fraction) -> bool:
        return self.a * x + self.b * y >= self.c


@dataclass(frozen=True)
class LpProblem:
    """Minimise ``x + y`` over the constraints and ``0 <= x <= x_max, 0 <= y <= y_max``."""

    constraints: tuple[Constraint, ...]
    x_max: Fraction
    y_max: Fraction

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "x_max", F(self.x_max))
        object.__setattr__(self, "y_max", F(self.y_max))
        if self.x_max < 0 or self.y_max < 0:
            raise BadParams("box limits must be non-negative")

    def feasible(self, x: Fraction, y: Fraction) -> bool:
        if not (0 <= x <= self.x_max and 0 <= y <= self.y_max):
            return False
        return all(c.holds(x, y) for c in self.constraints)


@dataclass(frozen=True)
class LpSolution:
    x: Fraction
    y: Fraction
    vertex_kind: str
    tight: tuple[str, ...]

    @property
    def value(self) -> Fraction:
        return self.x + self.y


def _lines(problem: LpProblem):
    # (a, b, c, label) for a*x + b*y = c
    out = [(c.a, c.b, c.c, f"c{i}") for i, c in enumerate(problem.constraints)]
    out += [(F(1), F(0), F(0), "x=0"), (F(0), F(1), F(0), "y=0"),
            (F(1), F(0), problem.x_max, "x=x_max"), (F(0), F(1), problem.y_max, "y=y_max")]
    return out


def solve(problem: LpProblem) -> LpSolution:
    """Vertex enumeration; ties go to the lexicographically smallest ``(x, y)``."""
    lines = _lines(problem)
    best = None
    for (a1, b1, c1, _), (a2, b2, c2, _) in combinations(lines, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        x = (c1 * b2 - c2 * b1) / det
        y = (a1 * c2 - a2 * c1) / det
        if not problem.feasible(x, y):
            continue
        key = (x + y, x, y)
        if best is None or key < best:
            best = key
    if best is None:
        raise LpInfeasible("the feasible region is empty")
    _, x, y = best
    tight = tuple(lab for a, b, c, lab in lines if a * x + b * y == c)
    n_cons = sum(1 for t in tight if t.startswith("c"))
    kind = ("constraint x constraint" if n_cons >= 2
            else "constraint x box" if n_cons == 1 else "box corner")
    return LpSolution(x, y, kind, tight)


def thm1_problem(params: CodeParams) -> LpProblem:
    """Regime ``kF <= rF``: only the rank-counting constraint, which alone
    forces ``x + y >= kI*ell`` there."""
    lam, kF, rF, rI, ell = params.lambda_, params.kF, params.rF, params.rI, params.ell
    if kF > rF:
        raise RegimeMismatch("requires k^F <= r^F")
    return LpProblem((Constraint(rF, kF, lam * kF * rF * ell),), F(params.kI * ell), F(rI * ell))


def thm2_problem(params: CodeParams) -> LpProblem:
    lam, kF, rF, rI, ell = params.lambda_, params.kF, params.rF, params.rI, params.ell
    if not rF < kF:
        raise RegimeMismatch("requires r^F < k^F")
    if not rI <= kF:
        raise RegimeMismatch("requires r^I <= k^F")
    return LpProblem(
        (Constraint(rF, kF, lam * kF * rF * ell),
         Constraint(1, 0, F(lam * kF * (lam - 1) * rF * ell, (lam - 1) * rF + rI))),
        F(params.kI * ell), F(rI * ell))


def thm3_problem(params: CodeParams) -> LpProblem:
    lam, kF, rF, rI, ell = params.lambda_, params.kF, params.rF, params.rI, params.ell
    if not rF < kF:
        raise RegimeMismatch("requires r^F < k^F")
    if not kF < rI:
        raise RegimeMismatch("requires k^F < r^I")
    return LpProblem(
        (Constraint(rF, kF, lam * kF * rF * ell),
         Constraint(F((lam - 1) * rF + kF, kF), F(lam * (rI - kF), rI), lam * (lam - 1) * rF * ell)),
        F(lam * kF * ell), F(rI * ell))


def problem_for(params: CodeParams) -> LpProblem:
    """The LP whose optimum the regime's closed-form bound should equal."""
    if params.kF <= params.rF:
        return thm1_problem(params)
    if params.rI <= params.kF:
        return thm2_problem(params)
    return thm3_problem(params)
