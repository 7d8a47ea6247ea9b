"""Command-line front end.

Exit codes: 0 when every assertion passes, 1 when one fails, 2 for usage,
parse or evaluation errors, 3 when a horizon exceeds the element cap.
Text reports go to stdout (or CSV with ``--format csv``); ``--out`` also
writes the CSV to a file.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from typing import Sequence

import numpy as np

from . import worked_examples
from .density import GAP_TOL, STAR_THRESHOLD, SetPredicate, condition_star, density, liminf_estimate, limsup_estimate
from .directed import (
    DirectedSet,
    FamilySpecError,
    InvalidElementError,
    ResourceLimitError,
    TruncationPolicy,
    default_policy,
    parse_family,
    validate_axioms,
)
from .expr import BOOL, NUM, CompiledExpr, ExprError, parse_expr
from .nets import EPS_LIST, TOL, Net, stat_cauchy, stat_converges_to
from .netspace import BOUND_CAP, classify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _bool(text: str) -> bool:
    t = text.lower()
    if t in ("true", "1", "yes"):
        return True
    if t in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", default="N", help='directed set: N, N^d, div, div1, prod(<spec>,<spec>)')
    common.add_argument("--horizon", type=int, help="box truncation H (default depends on arity)")
    common.add_argument("--frontier", type=int, help="frontier F (default per axis)")
    common.add_argument("--format", choices=("text", "csv"), default="text")
    common.add_argument("--out", help="also write the CSV report to this path")
    common.add_argument("--seed", type=int, default=0)

    nets = argparse.ArgumentParser(add_help=False)
    nets.add_argument("--net", action="append", required=True, help="net component expression (repeat for R^k)")
    nets.add_argument("--eps", type=_floats, default=list(EPS_LIST), help="comma-separated eps list")
    nets.add_argument("--tol", type=float, default=TOL)

    p = _Parser(prog="netdensity", description="Densities and statistical convergence over directed sets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("density", parents=[common], help="density report of a set expression")
    d.add_argument("--set", required=True, dest="set_expr")
    d.add_argument("--expect-exists", choices=("Exists", "DoesNotExist", "Inconclusive"))
    d.add_argument("--expect-lower-ge", type=float)
    d.add_argument("--expect-upper-le", type=float)
    d.add_argument("--gap-tol", type=float, default=GAP_TOL)

    for name in ("liminf", "limsup"):
        s = sub.add_parser(name, parents=[common], help=f"truncated {name} of a scalar net expression")
        s.add_argument("--net", required=True)
        s.add_argument("--expect", type=float, help="assert the final estimate equals this value")
        s.add_argument("--expect-tol", type=float, default=1e-9)

    c = sub.add_parser("converge", parents=[common, nets], help="statistical convergence to a limit")
    c.add_argument("--limit", type=_floats, required=True, help="comma-separated limit vector")
    c.add_argument("--expect", type=_bool, default=True, help="expected verdict (default true)")

    y = sub.add_parser("cauchy", parents=[common, nets], help="statistical Cauchy test")
    y.add_argument("--expect", type=_bool, default=True)

    s = sub.add_parser("star", parents=[common], help="upper density of the up-set of gamma")
    s.add_argument("--gamma", type=_ints, required=True, help="comma-separated coordinates")
    s.add_argument("--threshold", type=float, default=STAR_THRESHOLD)
    s.add_argument("--expect", type=_bool, default=True)

    k = sub.add_parser("classify", parents=[common, nets], help="membership in M, M_cy, M_ct, M_0")
    k.add_argument("--bound-cap", type=float, default=BOUND_CAP)
    k.add_argument("--expect", type=_ints, help="expected flags in_M,in_M_cy,in_M_ct,in_M_0 as 0/1")

    a = sub.add_parser("axioms", parents=[common], help="finite checks of the directed-set axioms")
    a.add_argument("--sample-size", type=int, default=48)
    a.add_argument("--expect", type=_bool, default=True)

    sub.add_parser("paper-examples", parents=[common], help="run every worked-example check and print a pass/fail table")
    return p


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _policy(args, ds: DirectedSet) -> TruncationPolicy:
    if args.horizon is None:
        base = default_policy(ds)
        return TruncationPolicy(base.horizon, args.frontier) if args.frontier is not None else base
    return TruncationPolicy(args.horizon, args.frontier)


def _set_predicate(src: str, ds: DirectedSet) -> SetPredicate:
    f = CompiledExpr(parse_expr(src, ds.arity, want=BOOL), ds.arity)
    return SetPredicate(f, name=src)


def _scalar(src: str, ds: DirectedSet) -> CompiledExpr:
    return CompiledExpr(parse_expr(src, ds.arity, want=NUM), ds.arity)


def _net(sources: Sequence[str], ds: DirectedSet) -> Net:
    comps = [_scalar(s, ds) for s in sources]
    if len(comps) == 1:
        f = comps[0]
        return Net(lambda e: float(f(e)), 1, ds)
    return Net(lambda e: [float(c(e)) for c in comps], len(comps), ds)


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _emit(args, text: str, csv_text: str) -> None:
    sys.stdout.write((csv_text if args.format == "csv" else text.rstrip("\n") + "\n"))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(csv_text)


def _assertion(ok: bool, what: str) -> int:
    if not ok:
        print(f"assertion failed: {what}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_density(args) -> int:
    ds = parse_family(args.family)
    pol = _policy(args, ds)
    rep = density(_set_predicate(args.set_expr, ds), ds, pol, gap_tol=args.gap_tol)
    _emit(args, rep.to_text(), rep.to_csv())
    status = EXIT_OK
    if args.expect_exists is not None and str(rep.exists_flag) != args.expect_exists:
        status = _assertion(False, f"exists={rep.exists_flag}, expected {args.expect_exists}")
    if args.expect_lower_ge is not None and not rep.lower_est >= args.expect_lower_ge:
        status = _assertion(False, f"lower_est={rep.lower_est!r} < {args.expect_lower_ge}")
    if args.expect_upper_le is not None and not rep.upper_est <= args.expect_upper_le:
        status = _assertion(False, f"upper_est={rep.upper_est!r} > {args.expect_upper_le}")
    return status


def cmd_extremum(args) -> int:
    ds = parse_family(args.family)
    pol = _policy(args, ds)
    f = _scalar(args.net, ds)
    est = (liminf_estimate if args.command == "liminf" else limsup_estimate)(f, ds, pol)
    lines = [f"{args.command}: {est.value!r}", f"horizon: {pol.horizon}"]
    rows = [[*(f"f{i + 1}" for i in range(ds.arity)), "horizon", args.command]]
    for s in est.steps:
        lines.append(f"step: frontier={s.frontier} horizon={s.horizon} value={s.value!r}")
        rows.append([*s.frontier, s.horizon, repr(s.value)])
    _emit(args, "\n".join(lines), _csv(rows))
    if args.expect is not None:
        return _assertion(abs(est.value - args.expect) <= args.expect_tol, f"{args.command}={est.value!r}, expected {args.expect}")
    return EXIT_OK


def _eps_rows(per_eps) -> list[list]:
    rows = [["eps", "lower_est", "upper_est", "exists"]]
    for eps, rep in per_eps:
        rows.append([repr(eps), repr(rep.lower_est), repr(rep.upper_est), str(rep.exists_flag)])
    return rows


def cmd_converge(args) -> int:
    ds = parse_family(args.family)
    net = _net(args.net, ds)
    if len(args.limit) != net.dim:
        raise UsageError(f"--limit has {len(args.limit)} coordinates, the net has {net.dim}")
    v = stat_converges_to(net, np.array(args.limit), args.eps, _policy(args, ds), args.tol)
    rows = _eps_rows(v.per_eps) + [["converges", str(v.converges), "", ""]]
    _emit(args, v.to_text(), _csv(rows))
    return _assertion(v.converges == args.expect, f"converges={v.converges}, expected {args.expect}")


def cmd_cauchy(args) -> int:
    ds = parse_family(args.family)
    v = stat_cauchy(_net(args.net, ds), args.eps, _policy(args, ds), args.tol)
    rows = [["eps", "witness", "upper_est"]]
    for eps, rep, w in v.per_eps:
        rows.append([repr(eps), "" if w is None else " ".join(map(str, w)), "" if rep is None else repr(rep.upper_est)])
    rows.append(["cauchy", str(v.cauchy), ""])
    _emit(args, v.to_text(), _csv(rows))
    return _assertion(v.cauchy == args.expect, f"cauchy={v.cauchy}, expected {args.expect}")


def cmd_star(args) -> int:
    ds = parse_family(args.family)
    r = condition_star(tuple(args.gamma), ds, _policy(args, ds), args.threshold)
    text = "\n".join([f"gamma: {r.gamma}", f"holds: {r.holds}", f"threshold: {args.threshold}", r.report.to_text()])
    _emit(args, text, r.report.to_csv())
    return _assertion(r.holds == args.expect, f"holds={r.holds}, expected {args.expect}")


def cmd_classify(args) -> int:
    ds = parse_family(args.family)
    c = classify(_net(args.net, ds), _policy(args, ds), args.eps, args.tol, args.bound_cap)
    rows = [["in_M", "in_M_cy", "in_M_ct", "in_M_0"], c.csv_row()]
    _emit(args, c.to_text(), _csv(rows))
    if args.expect is not None:
        return _assertion(list(args.expect) == c.csv_row(), f"flags={c.csv_row()}, expected {args.expect}")
    return EXIT_OK


def cmd_axioms(args) -> int:
    ds = parse_family(args.family)
    r = validate_axioms(ds, _policy(args, ds), args.sample_size, args.seed)
    rows = [["check", "status"]] + [[k, "pass" if v else "fail"] for k, v in r.checks.items()]
    _emit(args, f"family: {ds.spec()}\n{r}", _csv(rows))
    return _assertion(r.ok == args.expect, f"ok={r.ok}, expected {args.expect}")


def cmd_paper_examples(args) -> int:
    rows = worked_examples.run_all()
    _emit(args, worked_examples.format_table(rows), worked_examples.to_csv(rows))
    failed = [r.name for r in rows if not r.passed]
    return _assertion(not failed, "failing checks: " + ", ".join(failed))


COMMANDS = {
    "density": cmd_density,
    "liminf": cmd_extremum,
    "limsup": cmd_extremum,
    "converge": cmd_converge,
    "cauchy": cmd_cauchy,
    "star": cmd_star,
    "classify": cmd_classify,
    "axioms": cmd_axioms,
    "paper-examples": cmd_paper_examples,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.horizon is not None and args.horizon < 1:
            raise UsageError("--horizon must be positive")
        if getattr(args, "eps", None) is not None and (not args.eps or min(args.eps) <= 0):
            raise UsageError("--eps values must be positive")
        if getattr(args, "tol", None) is not None and not 0 < args.tol < 1:
            raise UsageError("--tol must lie in (0, 1)")
        return COMMANDS[args.command](args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, ExprError, FamilySpecError, InvalidElementError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
