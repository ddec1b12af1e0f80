"""Command-line interface: ``convertbw <command> ...``.

All indices in files and output are 0-based: symbol ``j`` here is symbol
``j+1`` in 1-based notation, and subsymbol set ``[0, 1]`` is ``{1, 2}``.

Exit codes: 0 all checks passed, 1 a check failed, 2 bad usage or input.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import product

from . import io as cio
from .bounds import BOUNDS, compare, comparison_identities
from .code_model import random_mds_pair, validate_params
from .conversion import check_feasible, cost, derive_transform
from .exceptions import BadGridSpec, BadParams, ConvertbwError, GenerationFailed, Infeasible, SpaceTooLarge
from .lp_oracle import problem_for, solve
from .search import EXHAUSTIVE, PREFIX_ONLY, SearchConfig, min_read_search, verify_achievability
from .verify import verify_example

EPILOG = "Indices are 0-based; add 1 to map onto 1-based notation."
DEFAULT_GRID = "lambda=2..4,kF=1..6,rF=1..6,rI=1..12,ell=1,2,4"
GRID_KEYS = ("lambda", "kF", "rF", "rI", "ell")
CSV_COLUMNS = ["lambda", "kF", "rF", "rI", "ell", "regime", "ours_num", "ours_den",
               "prior_num", "prior_den", "delta_num", "delta_den"]


class UsageError(Exception):
    pass


def _frac(v) -> dict:
    return {"num": v.numerator, "den": v.denominator}


def _emit(args, doc: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps({"schema": cio.SCHEMA, **doc}, indent=1))
    else:
        print("\n".join(lines))


def workers() -> int:
    raw = os.environ.get("CONVERTBW_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"CONVERTBW_THREADS must be an integer, got {raw!r}") from None
    return n if n > 0 else (os.cpu_count() or 1)


def parse_grid(spec: str) -> dict[str, list[int]]:
    """Parse ``"lambda=2..3,kF=1..6,ell=1,2,4"``; bare values extend the previous key."""
    out: dict[str, list[int]] = {}
    key = None
    for tok in (t.strip() for t in spec.split(",")):
        if not tok:
            continue
        if "=" in tok:
            key, _, tok = tok.partition("=")
            key = key.strip()
            if key not in GRID_KEYS:
                raise BadGridSpec(f"unknown grid key {key!r}")
            if key in out:
                raise BadGridSpec(f"grid key {key!r} given twice")
            out[key] = []
        elif key is None:
            raise BadGridSpec(f"value {tok!r} before any key")
        m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", tok)
        if not m:
            raise BadGridSpec(f"bad grid value {tok!r}")
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) else lo
        if hi < lo:
            raise BadGridSpec(f"empty range {tok!r}")
        out[key].extend(range(lo, hi + 1))
    missing = [k for k in GRID_KEYS if k not in out]
    if missing:
        raise BadGridSpec(f"grid is missing keys {missing}")
    return out


def _grid_row(t: tuple, lp_check: bool):
    try:
        params = validate_params(*t, check_field=False)
    except BadParams:
        return None
    c = compare(params)
    comparison_identities(params)
    oracle_ok = None
    if lp_check:
        oracle_ok = solve(problem_for(params)).value == c.ours.value
    return (t, c.ours.regime, c.ours.value, c.prior.value, c.delta, oracle_ok)


def _grid_chunk(args):
    chunk, lp_check = args
    return [_grid_row(t, lp_check) for t in chunk]


def sweep(grid: dict[str, list[int]], lp_check: bool = False, n_workers: int = 1) -> list[tuple]:
    tuples = list(product(*(grid[k] for k in GRID_KEYS)))
    if n_workers > 1 and len(tuples) > 2000:
        size = -(-len(tuples) // n_workers)
        chunks = [(tuples[i:i + size], lp_check) for i in range(0, len(tuples), size)]
        with ProcessPoolExecutor(n_workers) as ex:
            rows = [r for part in ex.map(_grid_chunk, chunks) for r in part]
    else:
        rows = [_grid_row(t, lp_check) for t in tuples]
    return [r for r in rows if r is not None]


def cmd_verify_example(args) -> int:
    pair = cio.load_code(args.code) if args.code else None
    plan = cio.load_plan(args.plan) if args.plan else None
    E = cio.load_matrix(args.E) if args.E else None
    rep = verify_example(pair, plan, E, n_messages=args.messages, seed=args.seed)
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name:<20} {c.detail}" for c in rep.checks]
    s = rep.summary
    if s:
        lines.append(f"read {s['read']}, write {s['write']}, bound {s['bound']['num']}/{s['bound']['den']}, "
                     f"regime {s['regime']}")
    lines.append("PASS" if rep.passed else f"FAIL: {rep.first_failure.name}")
    _emit(args, rep.to_json(), lines)
    return 0 if rep.passed else 1


def _params_from(args, check_field=False):
    return validate_params(args.lambda_, args.kF, args.rF, args.rI, args.ell,
                           getattr(args, "p", 2), check_field=check_field)


def cmd_bound(args) -> int:
    params = _params_from(args)
    b = BOUNDS[args.which](params)
    doc = {"params": params.as_dict(), "bound": b.to_json()}
    lines = [f"regime   {b.regime}", f"value    {b.value.numerator}/{b.value.denominator}",
             f"ceiling  {b.ceiling}"]
    status = 0
    if args.lp_check:
        if args.which == "prior":
            raise UsageError("--lp-check does not apply to the prior bound")
        sol = solve(problem_for(params))
        agree = sol.value == b.value
        doc["oracle"] = {"x": _frac(sol.x), "y": _frac(sol.y), "value": _frac(sol.value),
                         "vertex_kind": sol.vertex_kind, "agrees": agree}
        lines.append(f"oracle   {sol.value} at ({sol.x}, {sol.y}) [{sol.vertex_kind}] "
                     f"{'agrees' if agree else 'DISAGREES'}")
        status = 0 if agree else 1
    _emit(args, doc, lines)
    return status


def cmd_compare(args) -> int:
    grid = parse_grid(args.grid)
    rows = sweep(grid, args.lp_check, workers())
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for t, regime, ours, prior, delta, _ in rows:
            w.writerow([*t, regime, ours.numerator, ours.denominator, prior.numerator,
                        prior.denominator, delta.numerator, delta.denominator])
    finally:
        if args.out:
            out.close()
    negative = sum(1 for r in rows if r[4] < 0)
    strict = sum(1 for r in rows if r[4] > 0)
    oracle_bad = sum(1 for r in rows if r[5] is False)
    summary = {"tuples": len(rows), "strict": strict, "negative": negative}
    if args.lp_check:
        summary["oracle_mismatches"] = oracle_bad
    print(json.dumps({"schema": cio.SCHEMA, "summary": summary}) if args.json else
          f"{len(rows)} tuples, {strict} strict improvements, {negative} negative deltas"
          + (f", {oracle_bad} oracle mismatches" if args.lp_check else ""), file=sys.stderr)
    return 0 if negative == 0 and oracle_bad == 0 else 1


def cmd_verify_plan(args) -> int:
    pair = cio.load_code(args.code)
    plan = cio.load_plan(args.plan)
    pr = pair.params
    rep = check_feasible(pair, plan)
    c = cost(plan, pr)
    b = BOUNDS["auto"](pr)
    doc = {"feasibility": rep.to_json(), "cost": c.to_json(), "bound": b.to_json()}
    lines = [f"feasible       {rep.holds}", f"rank B~, C~    {rep.rank_B}, {rep.rank_C}",
             f"full col rank  {rep.B_full_col_rank}", f"read/write     {c.read}/{c.write}",
             f"bound          {b.value} ({b.regime})"]
    if rep.holds:
        doc["gap"] = _frac(c.read - b.value)
        lines[-1] += f", gap {c.read - b.value}"
    if rep.holds and args.derive:
        t = derive_transform(pair, plan)
        cio.save_matrix(t.T, args.derive)
        doc["transform"] = {"path": args.derive, "rows": t.T.rows, "cols": t.T.cols}
        lines.append(f"transform      {t.T.rows}x{t.T.cols} written to {args.derive}")
    _emit(args, doc, lines)
    return 0 if rep.holds else 1


def cmd_search(args) -> int:
    if args.progress:
        logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    pair = cio.load_code(args.code)
    res = min_read_search(pair, SearchConfig(args.mode, args.max_read, args.max_plans))
    ach = verify_achievability(pair, res, n_messages=args.messages, seed=args.seed)
    doc = {"result": res.to_json(), "achievability": ach.to_json()}
    lines = [f"mode        {res.mode} ({'exhaustive' if res.exhaustive else 'upper bound only'})",
             f"best cost   {res.best_cost}", f"plan        {[list(d) for d in res.best_plan.D]}",
             f"checked     {res.plans_checked} plans",
             f"bound       {ach.bound} ({ach.regime}), gap {ach.gap}",
             f"conversion  {'ok' if ach.conversions_ok else 'FAILED'} on {ach.messages_checked} messages"]
    _emit(args, doc, lines)
    return 0 if ach.sound and ach.conversions_ok else 1


def cmd_gen_code(args) -> int:
    params = _params_from(args, check_field=True)
    pair = random_mds_pair(params, seed=args.seed, max_attempts=args.max_attempts)
    cio.save_code(pair, args.out)
    _emit(args, {"params": params.as_dict(), "out": args.out}, [f"wrote {args.out}"])
    return 0


def _param_flags(p: argparse.ArgumentParser, field: bool = False) -> None:
    p.add_argument("--lambda", dest="lambda_", type=int, required=True)
    p.add_argument("--kF", type=int, required=True)
    p.add_argument("--rF", type=int, required=True)
    p.add_argument("--rI", type=int, required=True)
    p.add_argument("--ell", type=int, default=1)
    if field:
        p.add_argument("--p", type=int, required=True, help="prime field size")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="convertbw", description=__doc__.splitlines()[0], epilog=EPILOG)
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("verify-example", parents=[common], epilog=EPILOG,
                       help="check the bundled F_43 worked example end to end")
    p.add_argument("--code", help="override the bundled code file")
    p.add_argument("--plan", help="override the bundled plan file")
    p.add_argument("--E", help="override the bundled E matrix file")
    p.add_argument("--messages", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_example)

    p = sub.add_parser("bound", parents=[common], help="evaluate a closed-form lower bound")
    _param_flags(p)
    p.add_argument("--which", choices=sorted(BOUNDS), default="auto")
    p.add_argument("--lp-check", action="store_true", help="cross-check with the LP oracle")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("compare", parents=[common], help="sweep a parameter grid to CSV")
    p.add_argument("--grid", default=DEFAULT_GRID)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--lp-check", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify-plan", parents=[common], epilog=EPILOG, help="check a read plan")
    p.add_argument("--code", required=True)
    p.add_argument("--plan", required=True)
    p.add_argument("--derive", metavar="OUT", help="write the transform matrix here")
    p.set_defaults(func=cmd_verify_plan)

    p = sub.add_parser("search", parents=[common], epilog=EPILOG, help="search for a minimum-read plan")
    p.add_argument("--code", required=True)
    p.add_argument("--mode", choices=[EXHAUSTIVE, PREFIX_ONLY], default=EXHAUSTIVE)
    p.add_argument("--max-read", type=int)
    p.add_argument("--max-plans", type=int)
    p.add_argument("--messages", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--progress", action="store_true", help="log progress to stderr")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("gen-code", parents=[common], help="write a random MDS code pair")
    _param_flags(p, field=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-attempts", type=int, default=1000)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_code)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (Infeasible, GenerationFailed) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except SpaceTooLarge as exc:
        print(f"SpaceTooLarge: {exc}", file=sys.stderr)
        return 2
    except (ConvertbwError, UsageError, OSError, ValueError, KeyError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
