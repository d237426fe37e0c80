"""Command-line interface: ``lyness <command> ...``.

Every command prints either a JSON document ``{"status", "command",
"payload"}`` or plain text.  Exit status is 0 on success, 1 when a
verification suite fails and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from fractions import Fraction

from lyness import special, verify
from lyness.curve import (
    CurveError,
    LynessCurve,
    ProjectivePoint,
    Q,
    h_for_period,
    torsion9_points,
)
from lyness.dynamics import CoordinateGrowth, ForbiddenSet, detect_period, invariant_h
from lyness.exactnum import format_rational, parse_rational
from lyness.forms import (
    lyness_point_to_short_weierstrass,
    lyness_point_to_tate,
    lyness_to_tate,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def point_arg(text: str) -> ProjectivePoint:
    try:
        return ProjectivePoint.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def R(q) -> str:
    return format_rational(q)


def P(pt: ProjectivePoint) -> str:
    return str(pt)


def plane(p) -> list[str]:
    return [R(p[0]), R(p[1])]


def wpoint(pt) -> str | list[str]:
    return "infinity" if pt is None else plane(pt)


# -- commands ----------------------------------------------------------------


def cmd_iterate(args) -> dict:
    a = args.a
    xs = [args.x0, args.x1][: args.steps + 1]
    truncated = None
    while len(xs) < args.steps + 1:
        n = len(xs) - 2
        if xs[n] == 0:
            truncated = {"step": n, "reason": f"x_{n} = 0: the next term divides by zero"}
            break
        xs.append((a + xs[-1]) / xs[-2])
    return {"a": R(a), "terms": [R(x) for x in xs], "truncated": truncated}


def _text_iterate(payload) -> str:
    lines = [", ".join(t.removesuffix("/1") for t in payload["terms"])]
    if payload["truncated"]:
        lines.append(f"stopped at step {payload['truncated']['step']}: {payload['truncated']['reason']}")
    return "\n".join(lines)


def cmd_period(args) -> dict:
    report = detect_period(args.a, (args.x0, args.x1), args.max_steps)
    out = {"a": R(args.a), "seed": plane((args.x0, args.x1)), "status": report.status, "period": report.period}
    if report.forbidden_step is not None:
        out["forbidden_step"] = report.forbidden_step
    out["orbit"] = [plane(p) for p in report.orbit]
    if args.x0 * args.x1 != 0:
        out["h"] = R(invariant_h(args.a, (args.x0, args.x1)))
    return out


def _curve(args) -> LynessCurve:
    return LynessCurve(args.a, args.h)


def cmd_curve(args) -> dict:
    c = _curve(args)
    out = {"a": R(c.a), "h": R(c.h), "class": c.kind.value}
    op = args.op
    if op == "classify":
        return out
    if op == "contains":
        out["point"] = P(args.p)
        out["on_curve"] = c.contains(args.p)
        return out
    if args.p is None:
        raise UsageError(f"curve {op} needs --p")
    out["p"] = P(args.p)
    if op == "add":
        q = args.q if args.q is not None else Q
        out["q"] = P(q)
        out["result"] = P(c.add(args.p, q))
    elif op == "neg":
        out["result"] = P(c.neg(args.p))
    elif op == "mul":
        out["k"] = args.k
        out["result"] = P(c.mul(args.p, args.k))
    elif op == "order":
        order = c.order_or_none(args.p, args.cap)
        out["cap"] = args.cap
        out["order"] = order
    elif op == "third":
        out["q"] = P(args.q)
        out["result"] = P(c.third_intersection(args.p, args.q))
    return out


def cmd_convert(args) -> dict:
    t = lyness_to_tate(args.a, args.h)
    out = {"a": R(args.a), "h": R(args.h)}
    if args.to == "tate":
        out["tate"] = {"b": R(t.b), "c": R(t.c)}
        if args.p is not None:
            out["point"] = P(lyness_point_to_tate(args.a, args.h, args.p))
    else:
        e = t.to_short_weierstrass()
        out["weierstrass"] = {"p": R(e.p), "q": R(e.q)}
        if args.p is not None:
            out["point"] = wpoint(lyness_point_to_short_weierstrass(args.a, args.h, args.p))
    return out


def cmd_family(args) -> dict:
    if args.period in (1, 2, 3, 7, 8):
        a, x0, x1 = special.family_point(args.period, args.u)
        report = detect_period(a, (x0, x1))
        return {"period": args.period, "u": R(args.u), "a": R(a), "x0": R(x0), "x1": R(x1),
                "verified_period": report.period}
    if args.period == 12:
        a, h = special.period12_parametrization(args.u)
        c = LynessCurve(a, h)
        return {"period": 12, "t": R(args.u), "a": R(a), "h": R(h),
                "order_of_Q": c.order_or_none(Q) if c.is_elliptic else None}
    raise UsageError("family periods are 1, 2, 3, 7, 8 and 12")


def cmd_hlevel(args) -> dict:
    try:
        h = h_for_period(args.period, args.a)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    c = LynessCurve(args.a, h)
    return {"period": args.period, "a": R(args.a), "h": R(h), "class": c.kind.value,
            "order_of_Q": c.order_or_none(Q) if c.is_elliptic else None}


def cmd_torsion(args) -> dict:
    pts = torsion9_points(args.a)
    c = LynessCurve(args.a, h_for_period(9, args.a))
    return {"a": R(args.a), "h": R(c.h), "points": [P(p) for p in pts],
            "orders": [c.order_or_none(p) for p in pts]}


def cmd_mobius(args) -> dict:
    try:
        entries = [parse_rational(t) for t in args.matrix.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    if len(entries) != 4:
        raise UsageError("--matrix takes four entries A,B,C,D")
    m = special.MobiusMap(*entries)
    cls = special.mobius_classify(m)
    return {"matrix": [R(e) for e in entries], "det": R(m.det),
            "trace2_over_det": R(m.trace**2 / m.det), "class": cls.kind, "period": cls.period}


def cmd_nine(args) -> dict:
    seeds = special.scan_nine_periodic(args.kmin, args.kmax, args.positive_only)
    return {"kmin": args.kmin, "kmax": args.kmax, "positive_only": args.positive_only,
            "seeds": [{"k": s.k, "a": R(s.a), "x": R(s.x), "y": R(s.y), "positive": s.positive,
                       "a_at_least_a1": s.at_least_a1, "period": 9} for s in seeds]}


def cmd_verify(args) -> dict:
    try:
        results = verify.run_suite(args.suite, args.seed)
    except KeyError:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(verify.SUITES)}") from None
    criteria = []
    for number, title, checks in results:
        criteria.append({
            "criterion": number,
            "title": title,
            "passed": all(c.passed for c in checks),
            "checks": [asdict(c) for c in checks],
        })
    return {"suite": args.suite, "seed": args.seed,
            "passed": all(c["passed"] for c in criteria), "criteria": criteria}


def _text_verify(payload) -> str:
    lines = []
    for crit in payload["criteria"]:
        mark = "PASS" if crit["passed"] else "FAIL"
        lines.append(f"[{mark}] {crit['criterion']:2d} {crit['title']}")
        for c in crit["checks"]:
            if not c["passed"]:
                lines.append(f"       failed: {c['name']}  {c['detail'][:160]}")
    lines.append("all passed" if payload["passed"] else "FAILURES")
    return "\n".join(lines)


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lyness", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("iterate", parents=[common], help="terms x_0..x_steps of the recurrence")
    p.add_argument("--a", type=rational_arg, required=True)
    p.add_argument("--x0", type=rational_arg, required=True)
    p.add_argument("--x1", type=rational_arg, required=True)
    p.add_argument("--steps", type=int, default=10)
    p.set_defaults(func=cmd_iterate, text=_text_iterate)

    p = sub.add_parser("period", parents=[common], help="detect the prime period of a seed")
    p.add_argument("--a", type=rational_arg, required=True)
    p.add_argument("--x0", type=rational_arg, required=True)
    p.add_argument("--x1", type=rational_arg, required=True)
    p.add_argument("--max-steps", type=int, default=100)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("curve", parents=[common], help="level-set class and group law on C_{a,h}")
    p.add_argument("op", choices=("classify", "contains", "add", "neg", "mul", "order", "third"))
    p.add_argument("--a", type=rational_arg, required=True)
    p.add_argument("--h", type=rational_arg, required=True)
    p.add_argument("--p", type=point_arg, help="x:y:z or affine x,y")
    p.add_argument("--q", type=point_arg)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--cap", type=int, default=30)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("convert", parents=[common], help="Tate or short Weierstrass model of C_{a,h}")
    p.add_argument("--to", choices=("tate", "weierstrass"), required=True)
    p.add_argument("--a", type=rational_arg, required=True)
    p.add_argument("--h", type=rational_arg, required=True)
    p.add_argument("--p", type=point_arg)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("family", parents=[common], help="seed from a rational period family")
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--u", type=rational_arg, required=True, help="family parameter (t for period 12)")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("hlevel", parents=[common], help="level h on which Q has a given order")
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--a", type=rational_arg, required=True)
    p.set_defaults(func=cmd_hlevel)

    p = sub.add_parser("torsion", parents=[common], help="9-torsion points of the period-9 curve")
    p.add_argument("--a", type=rational_arg, required=True)
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("mobius", parents=[common], help="finite-order class of t -> (At+B)/(Ct+D)")
    p.add_argument("--matrix", required=True, help="A,B,C,D")
    p.set_defaults(func=cmd_mobius)

    p = sub.add_parser("nine", parents=[common], help="9-periodic seeds from multiples of R")
    p.add_argument("--kmin", type=int, default=1)
    p.add_argument("--kmax", type=int, default=1)
    p.add_argument("--positive-only", action="store_true")
    p.set_defaults(func=cmd_nine)

    p = sub.add_parser("verify", parents=[common], help="run a reproduction suite")
    p.add_argument("--suite", default="all", help=", ".join(verify.SUITES))
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.set_defaults(func=cmd_verify, text=_text_verify)
    return parser


def _default_text(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.func(args)
    except (UsageError, CurveError, ForbiddenSet, CoordinateGrowth, ArithmeticError, ValueError) as exc:
        doc = {"status": "error", "command": args.command,
               "error": {"code": EXIT_USAGE, "type": type(exc).__name__, "message": str(exc)}}
        if args.format == "json":
            print(json.dumps(doc, ensure_ascii=False))
        else:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE

    failed = args.command == "verify" and not payload["passed"]
    if args.format == "json":
        doc = {"status": "failed" if failed else "ok", "command": args.command, "payload": payload}
        print(json.dumps(doc, ensure_ascii=False))
    else:
        print(getattr(args, "text", _default_text)(payload))
    return EXIT_FAILED if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
