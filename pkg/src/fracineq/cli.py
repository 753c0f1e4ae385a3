"""Command-line front end.

Exit codes: 0 success, 1 usage or hypothesis error, 2 a bound was violated
(or, for ``reduce``, a reduction disagreed by more than 1e-10).
"""
import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import bounds, io
from .bounds import FracParams
from .errors import FracIneqError, HypothesisError
from .fracint import FracOperand, power_rule, rl_left
from .funclib import builtin_suite, from_expression, get_function
from .harness import run_campaign, run_reductions
from .quadrature import QuadratureConfig

REDUCE_TOL = 1e-10

SKELETONS = {
    "thm5": "(r-a)/2 * [B(1/2;s+1,α+1) - B(1/2;α+1,s+1) + (2^(α+s)-1)/((α+s+1)2^(α+s))] * (|f'(a)| + |f'(r)|)",
    "thm6": "(r-a)/2 * (1/(αp+1))^(1/p) * ((|f'(a)|^q + |f'(r)|^q)/(s+1))^(1/q)",
    "thm7": "(r-a)/2 * [2/(α+1)(1-2^-α)]^(1-1/q) * [B(1/2;s+1,α+1) - B(1/2;α+1,s+1) + (2^(α+s)-1)/((α+s+1)2^(α+s))]^(1/q) * (|f'(a)|^q + |f'(r)|^q)^(1/q)",
    "thm8": "(r-a)/2^((2-s)/q) * (1/(αp+1))^(1/p) * |f'((a+r)/2)|",
    "eq2": "(b-a)/2 * (1/2)^((q-1)/q) * [(s + 2^-s)/((s+1)(s+2))]^(1/q) * (|f'(a)|^q + |f'(b)|^q)^(1/q)",
    "eq3": "thm7 at r = b",
    "eq4": "(b-a)/(2(p+1)^(1/p)) * [(|f'(a)|^(p/(p-1)) + |f'(b)|^(p/(p-1)))/2]^((p-1)/p)",
    "eq5": "thm6 at r = b",
    "eq7": "thm8 at r = b",
    "hadamard_s_left": "2^(s-1) f((a+b)/2) <= (1/(b-a)) ∫_a^b f",
    "hadamard_s_right": "(1/(b-a)) ∫_a^b f <= (f(a) + f(b))/(s+1)",
}
LHS_TEXT = "|(f(a)+f(r))/2 - Γ(α+1)/(2(r-a)^α) [J_a+^α f(r) + J_r-^α f(a)]|"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _quad_args(p):
    p.add_argument("--abs-tol", type=float, default=1e-10)
    p.add_argument("--rel-tol", type=float, default=1e-10)
    p.add_argument("--max-subdivisions", type=int, default=2000)


def _function_args(p):
    p.add_argument("--function", default=None, help="builtin function id (see list-functions)")
    p.add_argument("--expr", default=None, help="custom expression in x, e.g. 'x**3 + exp(x)'")
    p.add_argument("--domain", type=float, nargs=2, default=(0.0, 5.0), metavar=("LO", "HI"))


def build_parser():
    parser = _Parser(prog="fracineq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="evaluate one bound on one instance")
    v.add_argument("--theorem", required=True, choices=bounds.THEOREM_IDS)
    _function_args(v)
    v.add_argument("--a", type=float, required=True)
    v.add_argument("--r", type=float, required=True)
    v.add_argument("--b", type=float, default=None)
    v.add_argument("--alpha", type=float, default=1.0)
    v.add_argument("--s", type=float, default=1.0)
    v.add_argument("--q", type=float, default=1.0)
    v.add_argument("--p", type=float, default=None, help="Holder exponent; sets q = p/(p-1)")
    v.add_argument("--no-check", action="store_true", help="skip the hypothesis classifier")
    v.add_argument("--json", action="store_true")
    _quad_args(v)

    s = sub.add_parser("sweep", help="run a campaign from a config file")
    s.add_argument("config")
    s.add_argument("--out", required=True, help="output directory for campaign.json and campaign.csv")
    s.add_argument("--json", action="store_true", help="print the summary as JSON")

    r = sub.add_parser("reduce", help="check that general bounds reduce to their special cases")
    r.add_argument("--json", action="store_true")

    o = sub.add_parser("oracle-compare", help="compare fractional-integral quadrature routes")
    _function_args(o)
    o.add_argument("--a", type=float, default=0.0)
    o.add_argument("--x", type=float, required=True)
    o.add_argument("--alpha", type=float, required=True)
    o.add_argument("--json", action="store_true")
    _quad_args(o)

    lf = sub.add_parser("list-functions", help="list builtin test functions")
    lf.add_argument("--json", action="store_true")
    return parser


def _resolve_function(args):
    if args.expr is not None:
        if args.function is not None:
            raise FracIneqError("give either --function or --expr, not both")
        return from_expression("expr", args.expr, tuple(args.domain))
    if args.function is None:
        raise FracIneqError("one of --function or --expr is required")
    return get_function(args.function)


def _cfg(args, method="substitution_adaptive"):
    return QuadratureConfig(args.abs_tol, args.rel_tol, args.max_subdivisions, method)


def _print_report(rep):
    p = rep.params
    print(f"{rep.theorem_id}  f={rep.function_id}  a={p.a:g} r={p.r:g} b={p.b:g} "
          f"alpha={p.alpha:g} s={p.s:g} q={p.q:g} p={p.p:g}")
    if rep.theorem_id.startswith("thm") or rep.theorem_id in ("eq3", "eq5", "eq7"):
        print(f"  lhs = {LHS_TEXT}")
    elif rep.theorem_id in ("eq2", "eq4"):
        print("  lhs = |(f(a)+f(b))/2 - (1/(b-a)) ∫_a^b f|")
    print(f"  rhs = {SKELETONS[rep.theorem_id]}")
    print(f"  lhs   = {rep.lhs:.15g}")
    print(f"  rhs   = {rep.rhs:.15g}")
    print(f"  slack = {rep.slack:.6e}   error budget = {rep.numeric_error_budget:.3e}")
    for k, val in rep.extras.items():
        print(f"  {k} = {val}")
    print(f"  verdict: {rep.verdict}")


def cmd_verify(args):
    fs = _resolve_function(args)
    q = args.q
    if args.p is not None:
        if not args.p > 1.0:
            raise FracIneqError("--p must be > 1")
        q = args.p / (args.p - 1.0)
    p = FracParams(args.a, args.r, args.b, args.alpha, args.s, q)
    cfg = _cfg(args)
    check = not args.no_check
    if args.theorem == "hadamard_s":
        reports = list(bounds.bound_hadamard_s(fs, p.a, p.b, p.s, cfg, check))
    else:
        reports = [bounds.evaluate(args.theorem, fs, p, cfg, check)]
    if args.json:
        print(json.dumps(io._clean([r.to_dict() for r in reports]), indent=2))
    else:
        for rep in reports:
            _print_report(rep)
    return 2 if any(r.verdict == bounds.VIOLATED for r in reports) else 0


def cmd_sweep(args):
    config = io.load_config(args.config)
    result = run_campaign(config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    io.write_json(io.result_to_json(result), out / "campaign.json")
    io.write_csv(result.reports, out / "campaign.csv")
    summary = {k: getattr(result, k) for k in
               ("total", "holds", "holds_within_budget", "violated", "skipped_hypothesis", "worst_slack")}
    summary["errors"] = len(result.errors)
    summary.update(result.evidence)
    if args.json:
        print(json.dumps(io._clean(summary), indent=2))
    else:
        for k, val in summary.items():
            print(f"{k:32s} {val}")
        print(f"wrote {out / 'campaign.json'} and {out / 'campaign.csv'}")
    return 2 if result.violated > 0 else 0


def cmd_reduce(args):
    records = run_reductions()
    if args.json:
        print(json.dumps(io._clean([r.to_dict() for r in records]), indent=2))
    else:
        for rec in records:
            flag = "ok" if rec.max_discrepancy <= REDUCE_TOL else "MISMATCH"
            print(f"{rec.name:36s} cases={rec.cases:3d} max discrepancy={rec.max_discrepancy:.3e} {flag}")
    return 2 if any(r.max_discrepancy > REDUCE_TOL for r in records) else 0


def cmd_oracle_compare(args):
    fs = _resolve_function(args)
    op = FracOperand(fs.f, args.a, args.x, args.alpha)
    sub, sub_err = rl_left(op, args.x, _cfg(args, "substitution_adaptive"))
    values = {"substitution": sub}
    errors = {"substitution": sub_err}
    try:
        values["direct"], errors["direct"] = rl_left(op, args.x, _cfg(args, "direct_adaptive"))
    except FracIneqError as exc:
        values["direct"], errors["direct"] = None, str(exc)
    if fs.monomial is not None and args.a == 0.0:
        c, n = fs.monomial
        values["closed_form"] = c * power_rule(n, args.alpha, args.x)
    names = [k for k, v in values.items() if v is not None]
    deltas = {f"{u}-{w}": values[u] - values[w] for i, u in enumerate(names) for w in names[i + 1:]}
    if args.json:
        print(json.dumps(io._clean({"function_id": fs.id, "a": args.a, "x": args.x,
                                    "alpha": args.alpha, "values": values, "errors": errors,
                                    "deltas": deltas}), indent=2))
    else:
        print(f"J_a+^{args.alpha:g} {fs.id} at x={args.x:g}, a={args.a:g}")
        for k, val in values.items():
            err = errors.get(k)
            tail = "" if err is None else (f"  (err {err:.2e})" if isinstance(err, float) else f"  ({err})")
            print(f"  {k:13s} {val if val is None else format(val, '.16g')}{tail}")
        for k, d in deltas.items():
            print(f"  delta {k:28s} {d:+.3e}")
    return 0


def cmd_list_functions(args):
    rows = [{"id": fs.id, "expr": fs.expr, "domain": list(fs.domain),
             "declared_class": fs.declared_class, "s": fs.s_value,
             "derivative_class": fs.derivative_class, "derivative_s": fs.derivative_s,
             "notes": fs.notes} for fs in builtin_suite()]
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        for row in rows:
            cls = row["declared_class"] + (f"(s={row['s']:g})" if row["s"] is not None else "")
            dcls = row["derivative_class"] + (f"(s={row['derivative_s']:g})" if row["derivative_s"] else "")
            print(f"{row['id']:20s} {row['expr']:22s} f: {cls:26s} |f'|: {dcls}")
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "reduce": cmd_reduce,
    "oracle-compare": cmd_oracle_compare,
    "list-functions": cmd_list_functions,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except HypothesisError as exc:
        print(f"hypothesis error: {exc}", file=sys.stderr)
        return 1
    except (FracIneqError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
