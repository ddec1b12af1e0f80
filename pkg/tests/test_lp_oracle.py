from fractions import Fraction as F
from itertools import product

import pytest

from convertbw.bounds import lower_bound
from convertbw.code_model import CodeParams
from convertbw.exceptions import BadParams, LpInfeasible, RegimeMismatch
from convertbw.lp_oracle import Constraint, LpProblem, problem_for, solve, thm2_problem, thm3_problem


def P(lam, kF, rF, rI, ell=1):
    return CodeParams(lam, kF, rF, rI, ell)


def test_worked_example_vertex():
    sol = solve(thm3_problem(P(2, 2, 1, 4, 4)))
    assert (sol.x, sol.y, sol.value) == (0, 8, 8)
    assert "x=0" in sol.tight and "c0" in sol.tight


def test_empty_problem():
    sol = solve(LpProblem((), 5, 5))
    assert (sol.x, sol.y) == (0, 0) and sol.vertex_kind == "box corner"


def test_infeasible():
    with pytest.raises(LpInfeasible):
        solve(LpProblem((Constraint(1, 1, 10),), 4, 4))


def test_degenerate_rejected():
    with pytest.raises(BadParams):
        Constraint(0, 0, 1)
    with pytest.raises(BadParams):
        LpProblem((), -1, 0)


def test_thm2_examples():
    assert solve(thm2_problem(P(2, 4, 2, 3))).value == F(28, 5)
    assert solve(thm2_problem(P(2, 4, 2, 1, 2))).value == 14
    with pytest.raises(RegimeMismatch):
        thm2_problem(P(2, 4, 2, 5))


def test_case2_vertex_is_pq():
    lam, kF, rF, rI = 2, 3, 1, 4
    sol = solve(thm3_problem(P(lam, kF, rF, rI)))
    den = kF * rI - rF * rI + lam * kF * rF
    assert sol.x == F(lam * kF * rF * (lam * kF - rI), den)
    assert sol.y == F(lam * kF * rF * rI, den)
    assert sol.value == F(18, 7)
    assert sol.vertex_kind == "constraint x constraint"


def test_case4_vertex():
    sol = solve(thm3_problem(P(6, 3, 2, 13)))
    assert (sol.x, sol.y, sol.value) == (0, 13, 13)


def test_thm3_regime_errors():
    with pytest.raises(RegimeMismatch):
        thm3_problem(P(2, 4, 2, 3))


def test_tie_break_lexicographic():
    # x + y >= 2 along a whole edge; the smallest (x, y) wins.
    sol = solve(LpProblem((Constraint(1, 1, 2),), 5, 5))
    assert (sol.x, sol.y) == (0, 2)


@pytest.mark.parametrize("params", [P(2, 2, 1, 4, 4), P(2, 4, 2, 3), P(6, 3, 2, 11), P(3, 5, 2, 9, 2)])
def test_redundant_constraints_do_not_move_optimum(params):
    prob = problem_for(params)
    base = solve(prob)
    doubled = LpProblem(prob.constraints * 2, prob.x_max, prob.y_max)
    weak = LpProblem(prob.constraints + (Constraint(1, 1, 0),), prob.x_max, prob.y_max)
    assert solve(doubled).value == solve(weak).value == base.value


def test_ell_scaling():
    for lam, kF, rF, rI in product((2, 3), range(1, 6), range(1, 6), range(1, 10)):
        v1 = solve(problem_for(P(lam, kF, rF, rI, 1))).value
        for s in (2, 3, 4):
            assert solve(problem_for(P(lam, kF, rF, rI, s))).value == s * v1


def test_solution_feasible_and_matches_bound():
    for lam, kF, rF, rI in product((2, 3, 4), range(1, 7), range(1, 7), range(1, 13)):
        pr = P(lam, kF, rF, rI)
        prob = problem_for(pr)
        sol = solve(prob)
        assert prob.feasible(sol.x, sol.y)
        assert sol.value == lower_bound(pr).value
