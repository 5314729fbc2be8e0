"""Command-line front end.

Exit codes: 0 success with a verified trace, 1 usage error, 2 the
constructibility predicate says no, 3 a numeric or verification failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .axioms import AxiomError, AxiomInstance, Multiplicity, instance_trace, solve_axiom
from .geom import DEFAULT_TOL, DegenerateInputError, Line, Point, Tolerance
from .lill import OutOfDomainError, Polynomial, lill_step, solve_real_roots
from .numtheory import UnsupportedInputError
from .polygon import build_polygon, check_polygon
from .section import DomainError, NumericFailure, m_sect
from .serialize import emit_json, emit_svg
from .trace import FoldTrace, TraceBuilder, verify

EXIT_OK, EXIT_USAGE, EXIT_NO, EXIT_NUMERIC = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parser() -> argparse.ArgumentParser:
    tolopt = _Parser(add_help=False)
    tolopt.add_argument("--tol", type=float, default=DEFAULT_TOL.eps_incidence,
                        help="incidence tolerance (default %(default)g)")
    tolopt.add_argument("--svg", type=Path, help="write the trace as SVG")
    common = _Parser(add_help=False, parents=[tolopt])
    common.add_argument("--json", dest="json_out", type=Path, help="write the trace as JSON")

    # shared options live on the subcommands; argparse would let subparser defaults clobber top-level values
    ap = _Parser(prog="nfold", description="n-fold origami constructions")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[tolopt], help="is the regular m-gon constructible with n folds?")
    p.add_argument("m", type=int)
    p.add_argument("--folds", type=int, default=None)

    p = sub.add_parser("msect", parents=[common], help="divide an angle into equal parts")
    p.add_argument("--angle-deg", type=float, required=True)
    p.add_argument("--parts", type=int, required=True)

    p = sub.add_parser("polygon", parents=[common], help="construct a regular m-gon")
    p.add_argument("m", type=int)
    p.add_argument("--folds", type=int, default=None)

    p = sub.add_parser("solve", parents=[common], help="real roots by Lill's method")
    p.add_argument("--coeffs", required=True, help="comma-separated, highest degree first")

    # here --json names the input instance, so the trace goes to --out
    p = sub.add_parser("axiom", parents=[tolopt], help="solve one single-fold operation")
    p.add_argument("op_id", type=int)
    p.add_argument("--json", dest="instance", type=Path, required=True,
                   help='instance file: {"points": [[x, y], ...], "lines": [[a, b, c], ...]}')
    p.add_argument("--out", dest="json_out", type=Path, help="write the first fold's trace as JSON")
    return ap


def _write(args, trace: FoldTrace):
    if getattr(args, "json_out", None):
        args.json_out.write_bytes(emit_json(trace))
    if getattr(args, "svg", None):
        args.svg.write_bytes(emit_svg(trace))


def _finish(args, trace: FoldTrace, tol: Tolerance) -> int:
    rep = verify(trace, tol)
    print(f"fold_width = {trace.fold_width}  folds = {trace.fold_count}  "
          f"max_residual = {rep.max_residual:.3g}  verified = {rep.ok}")
    _write(args, trace)
    if not rep.ok:
        for i, c, r in rep.failures[:10]:
            print(f"  step {i}: {c} residual {r:.3g}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _cmd_check(args, tol) -> int:
    if args.m < 3:
        raise ValueError("m must be at least 3")
    n = args.folds
    v = check_polygon(args.m, n if n is not None else 1)
    rep = v.detail
    factors = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in rep.phi_factors.factors) or "1"
    print(f"m = {args.m}  phi(m) = {rep.phi} = {factors}")
    print(f"largest prime of phi(m) = {rep.largest_prime}")
    print(f"required n = {v.required_n}")
    if n is None:
        return EXIT_OK
    print(f"constructible with {n}-fold origami: {'yes' if v.ok else 'no'}")
    return EXIT_OK if v.ok else EXIT_NO


def _cmd_msect(args, tol) -> int:
    if args.parts < 2:
        raise ValueError("--parts must be at least 2")
    theta = math.radians(args.angle_deg)
    angle, trace, plan = m_sect(theta, args.parts, tol)
    print(f"{args.angle_deg:g} deg / {args.parts} = {math.degrees(angle):.12g} deg")
    print(f"prime chain {list(plan.prime_chain)}  required n = {plan.required_n}")
    return _finish(args, trace, tol)


def _cmd_polygon(args, tol) -> int:
    v = check_polygon(args.m, args.folds if args.folds is not None else 1)
    if args.folds is not None and not v.ok:
        print(f"the regular {args.m}-gon needs n >= {v.required_n}")
        return EXIT_NO
    res = build_polygon(args.m, tol)
    print(f"regular {args.m}-gon, required n = {v.required_n}")
    for k, p in enumerate(res.vertices):
        print(f"  v{k} = ({p.x:.12f}, {p.y:.12f})")
    return _finish(args, res.trace, tol)


def _cmd_solve(args, tol) -> int:
    try:
        coeffs = [float(c) for c in args.coeffs.replace(" ", "").split(",") if c]
    except ValueError as e:
        raise ValueError(f"bad --coeffs: {e}") from e
    poly = Polynomial(coeffs)
    sols = solve_real_roots(poly, tol)
    print(f"p(x) = {poly}")
    if not sols:
        print("no real roots within the shot range")
        return EXIT_OK
    # all roots share one trace; prefixes keep their pivots apart
    b = TraceBuilder()
    for i, s in enumerate(sols):
        print(f"  root {s.root:.15g}  folds = {s.width}  residual = {s.residual:.3g}")
        lill_step(b, s, prefix=f"r{i}_")
    return _finish(args, b.build(), tol)


def _load_instance(op_id: int, path: Path) -> AxiomInstance:
    doc = json.loads(path.read_text())
    pts = tuple(Point(*map(float, p)) for p in doc.get("points", []))
    lines = tuple(Line(*map(float, l)) for l in doc.get("lines", []))
    return AxiomInstance(op_id, pts, lines)


def _cmd_axiom(args, tol) -> int:
    inst = _load_instance(args.op_id, args.instance)
    sol = solve_axiom(inst, tol)
    print(f"op {inst.op_id}: {sol.multiplicity_class.value}, count = {sol.count}")
    for f in sol.folds:
        print(f"  fold {f.a:.15g} x + {f.b:.15g} y + {f.c:.15g} = 0")
    if sol.multiplicity_class is not Multiplicity.FINITE:
        return EXIT_OK
    ok = all(verify(instance_trace(inst, f), tol).ok for f in sol.folds)
    _write(args, instance_trace(inst, sol.folds[0]))
    return EXIT_OK if ok else EXIT_NUMERIC


COMMANDS = {"check": _cmd_check, "msect": _cmd_msect, "polygon": _cmd_polygon,
            "solve": _cmd_solve, "axiom": _cmd_axiom}


def main(argv: list[str] | None = None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        tol = Tolerance.from_incidence(args.tol)
        return COMMANDS[args.cmd](args, tol)
    except (NumericFailure, OutOfDomainError) as e:
        print(f"numeric failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, AxiomError, DegenerateInputError, DomainError, UnsupportedInputError,
            OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
