"""Command-line entry point: ``quadmonad <verb> [options]``."""
from __future__ import annotations

import argparse
import json
import sys

from . import bundles as bd
from .chow import ChowError, QuadricSpace, degree, format_class, parse_class
from .classify import SearchConfig, classify
from .cohomology import LESInconsistency, cohomology
from .monads import MonadCandidate, NotNormalized, run_all_checks

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_INCONSISTENT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(fmt: str, payload: dict, text: str) -> str:
    return json.dumps(payload, indent=2, sort_keys=False) if fmt == "json" else text


def _need_expr(args) -> str:
    if args.expr is None:
        raise UsageError(f"{args.verb} needs --expr")
    return args.expr


def _space(args, lo: int = 2) -> QuadricSpace:
    if args.n < lo:
        raise UsageError(f"--n must be at least {lo}")
    return QuadricSpace(args.n)


def cmd_chow(args) -> tuple[int, str]:
    space = _space(args)
    x = parse_class(space, _need_expr(args))
    payload = {"space": str(space), "class": format_class(x),
               "by_codim": {str(c): format_class(x.part(c)) for c in sorted(x.codims())}}
    text = f"{format_class(x)}"
    if x.codims() == {space.n}:
        payload["degree"] = degree(x)
        text += f"\ndegree = {degree(x)}"
    return EXIT_OK, _emit(args.format, payload, text)


def cmd_chern(args) -> tuple[int, str]:
    space = _space(args)
    e = bd.parse_bundle_expr(_need_expr(args), space)
    c = bd.total_chern(e)
    parts = {str(k): format_class(c.part(k)) for k in range(space.n + 1)}
    lines = [f"c({e}) = {format_class(c)}"] + [f"  c_{k} = {v}" for k, v in parts.items()]
    return EXIT_OK, _emit(args.format, {"expr": str(e), "rank": bd.rank(e), "chern": format_class(c), "c": parts},
                          "\n".join(lines))


def cmd_cohom(args) -> tuple[int, str]:
    space = _space(args)
    e = bd.parse_bundle_expr(_need_expr(args), space)
    table = cohomology(e, (-args.window, args.window))
    payload = {"expr": str(e), "window": list(table.twists()[::len(table.twists()) - 1]),
               "rows": {str(i): [table.dim(i, t) for t in table.twists()] for i in range(space.n + 1)}}
    return EXIT_OK, _emit(args.format, payload, table.render())


def cmd_check_monad(args) -> tuple[int, str]:
    if args.B is None:
        raise UsageError("check-monad needs --B (and optionally --A, --C)")
    m = MonadCandidate.parse(args.n, args.A or "", args.B, args.C or "")
    if args.normalize:
        m = m.normalized()
    report = run_all_checks(m)
    lines = [str(m)]
    for name, verdict in report.verdicts.items():
        lines.append(f"  {name:<32} {verdict:<8} {report.reasons[name]['text']}")
    lines.append("verdict: " + ("rejected" if report.fatal else "not excluded"))
    return EXIT_OK, _emit(args.format, report.to_dict(), "\n".join(lines))


def _classification_text(res, trace: bool) -> str:
    cfg = res.config
    out = [f"{res.space}, rank {cfg.homology_rank}, twist bound {cfg.twist_bound}"
           + ("" if cfg.spinors_enabled else ", spinors disabled")]
    if not res.survivors:
        out.append("survivors: none")
    for s in res.survivors:
        tag = s.matched or "?"
        line = f"  {tag:<5} {s.describe()}  [{s.status}]"
        if s.parametric:
            line += f"  a in {list(s.a_values)}"
        out.append(line)
    out.append(f"rejected: {res.rejected_count}")
    for cond, count in res.rejections_by_condition.items():
        out.append(f"  {cond:<24} {count}")
    if trace:
        out.append("rejection samples:")
        out.extend(f"  {r.condition:<24} x{r.count:<8} {r.family}" for r in res.sample_rejections)
    for a in res.assumptions:
        out.append(f"assumes: {a}")
    out.append("matches expected list" if res.matches_expected() else "DIFFERS from expected list")
    return "\n".join(out)


def cmd_classify(args) -> tuple[int, str]:
    if not 4 <= args.n <= 8:
        raise UsageError("classify needs 4 <= --n <= 8")
    if args.rank not in (2, 3):
        raise UsageError("--rank must be 2 or 3")
    cfg = SearchConfig(args.n, args.rank, args.twist_bound, spinors_enabled=not args.disable_spinors)
    res = classify(cfg)
    payload = res.to_dict(trace=args.trace)
    # with spinors disabled the expected list is empty: every such bundle splits
    ok = not res.survivors if args.disable_spinors else res.matches_expected()
    payload["matches_expected"] = ok
    return (EXIT_OK if ok else EXIT_MISMATCH), _emit(args.format, payload, _classification_text(res, args.trace))


def cmd_tables(args) -> tuple[int, str]:
    space = _space(args)
    kinds = [bd.PLUS, bd.MINUS] if space.even else [bd.ODD]
    exprs = [bd.BundleExpr(space, [bd.line(0)])] + [bd.BundleExpr(space, [bd.spinor(k, 0)]) for k in kinds]
    if space.n == 4:
        exprs.append(bd.wedge2(bd.parse_bundle_expr("S'+S''", space)))
    if args.expr:
        exprs = [bd.parse_bundle_expr(args.expr, space)]
    w = (-args.window, args.window)
    tables = [cohomology(e, w) for e in exprs]
    payload = {str(t.expr): {str(i): [t.dim(i, k) for k in t.twists()] for i in range(space.n + 1)} for t in tables}
    return EXIT_OK, _emit(args.format, payload, "\n\n".join(t.render() for t in tables))


COMMANDS = {"chow": cmd_chow, "chern": cmd_chern, "cohom": cmd_cohom, "check-monad": cmd_check_monad,
            "classify": cmd_classify, "tables": cmd_tables}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quadmonad", description="Monads and bundles without inner cohomology on quadrics.")
    sub = p.add_subparsers(dest="verb", required=True)
    for verb in COMMANDS:
        s = sub.add_parser(verb)
        s.add_argument("--n", type=int, required=True, help="dimension of the quadric Q_n")
        s.add_argument("--format", choices=("text", "json"), default="text")
        s.add_argument("--expr", help="bundle or Chow class expression")
        if verb in ("cohom", "tables"):
            s.add_argument("--window", type=int, default=6, help="twists shown in [-w, w]")
        if verb == "check-monad":
            s.add_argument("--A", default="")
            s.add_argument("--B")
            s.add_argument("--C", default="")
            s.add_argument("--normalize", action="store_true", help="twist to normal form first")
        if verb == "classify":
            s.add_argument("--rank", type=int, default=3)
            s.add_argument("--twist-bound", type=int, default=5)
            s.add_argument("--disable-spinors", action="store_true")
            s.add_argument("--trace", action="store_true", help="include rejection samples")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        code, out = COMMANDS[args.verb](args)
    except LESInconsistency as exc:
        print(f"inconsistent: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (UsageError, bd.BundleError, ChowError, NotNormalized, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
