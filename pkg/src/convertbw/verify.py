"""End-to-end check of the bundled worked example (or a user-supplied variant)."""
from __future__ import annotations

from dataclasses import dataclass, field

from .bounds import bound_thm3, lower_bound
from .code_model import ConvertiblePair, is_mds_systematic
from .conversion import ReadPlan, build_restricted, cost, derive_transform
from .exceptions import ConvertbwError
from .ff_linalg import FFMatrix, column_space_contains, is_invertible, rank, solve_right
from .io import fixture_intact, worked_example
from .search import conversion_matches


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ExampleReport:
    checks: list[Check] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def to_json(self) -> dict:
        bad = self.first_failure
        return {"passed": self.passed, "first_failure": bad.name if bad else None,
                "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
                **self.summary}


def verify_example(pair: ConvertiblePair | None = None, plan: ReadPlan | None = None,
                   E: FFMatrix | None = None, n_messages: int = 100, seed: int = 0) -> ExampleReport:
    """Run every check of the worked example; stops early only when a later
    check cannot even be evaluated."""
    rep = ExampleReport()
    add = rep.checks.append
    bundled = pair is None and plan is None and E is None
    fx_pair, fx_plan, fx_E = worked_example()
    pair = pair or fx_pair
    plan = plan or fx_plan
    E = E if E is not None else fx_E
    pr = pair.params

    if bundled:
        intact = fixture_intact()
        add(Check("fixture_checksum", all(intact.values()), ", ".join(k for k, v in intact.items() if not v)))

    try:
        add(Check("B_is_mds", is_mds_systematic(pr.nI, pr.kI, pr.ell, pair.B),
                  f"{pr.nI} choose {pr.kI} symbol subsets and all square block minors"))
        add(Check("C_is_mds", is_mds_systematic(pr.nF, pr.kF, pr.ell, pair.C)))

        rm = build_restricted(pair, plan)
        Bt, Ct = rm.B_tilde, rm.C_tilde
        rb, rc = rank(Bt), rank(Ct)
        want = pr.lambda_ * pr.rF * pr.ell
        add(Check("C_in_B", column_space_contains(Bt, Ct), f"rank B~={rb}, rank C~={rc}"))
        add(Check("B_in_C", column_space_contains(Ct, Bt)))
        add(Check("ranks", rb == rc == want, f"expected both = {want}"))

        if E.shape == (Ct.cols, Bt.cols):
            add(Check("E_solves", Ct @ E == Bt, "C~ E = B~"))
        else:
            add(Check("E_solves", False, f"E has shape {E.shape}, expected {(Ct.cols, Bt.cols)}"))
        add(Check("E_invertible", is_invertible(E)))
        try:
            X = solve_right(Ct, Bt)
            add(Check("canonical_solution", Ct @ X == Bt))
        except ConvertbwError as exc:
            add(Check("canonical_solution", False, str(exc)))

        t = derive_transform(pair, plan)
        ok = conversion_matches(pair, plan, n_messages, seed)
        add(Check("conversion", ok, f"{n_messages} random messages, T is {t.T.rows}x{t.T.cols}"))

        c = cost(plan, pr)
        b = lower_bound(pr)
        thm3 = bound_thm3(pr).value if pr.rF < pr.kF < pr.rI else None
        add(Check("cost_meets_bound", c.read == b.value and (thm3 is None or thm3 == b.value),
                  f"read {c.read}, bound {b.value} ({b.regime})"))
        rep.summary = {"read": c.read, "write": c.write, "total": c.total,
                       "bound": {"num": b.value.numerator, "den": b.value.denominator},
                       "regime": b.regime, "rank_B": rb, "rank_C": rc}
    except ConvertbwError as exc:
        add(Check(type(exc).__name__, False, str(exc)))
    return rep
