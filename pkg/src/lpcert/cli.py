"""Command-line interface: ``lpcert <command> ...``.

Numbers are printed as rational strings.  ``solve`` exits 0/2/3 for
optimal/unbounded/infeasible; ``certify`` exits 0 when the certificate
proves optimality and 4 otherwise; 1 means a usage, parse or dimension
error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .certify import (
    Infeasible,
    Optimal,
    check_certificate,
    find_feasible_point,
    optimal_working_set_at,
    solve,
)
from .errors import LPError
from .exact_arith import format_rational, parse_rational
from .farkas import farkas
from .model import parse_lp, parse_matrix, parse_vector
from .perturb import Unbounded
from .render import render_svg
from .vertex import default_subset_cap, descend_to_vertex, enumerate_vertices

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNBOUNDED = 2
EXIT_INFEASIBLE = 3
EXIT_NOT_OPTIMAL = 4

EXIT_CODES = {"optimal": EXIT_OK, "unbounded": EXIT_UNBOUNDED, "infeasible": EXIT_INFEASIBLE}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _rational_list(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(parse_rational(t) for t in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _strs(values) -> list[str]:
    return [format_rational(v) for v in values]


def outcome_to_json(outcome) -> dict:
    if isinstance(outcome, Optimal):
        doc = {
            "status": "optimal",
            "x": _strs(outcome.x_star),
            "objective": format_rational(outcome.objective),
            "lambda": _strs(outcome.lam),
            "working_set": list(outcome.working_set.indices),
            "checks": outcome.certificate.checks.as_dict(),
        }
        if outcome.degenerate_objective:
            doc["degenerate_objective"] = True
        return doc
    if isinstance(outcome, Unbounded):
        return {"status": "unbounded", "ray": _strs(outcome.ray)}
    doc = {"status": "infeasible", "witness": _strs(outcome.witness), "reason": outcome.reason}
    if outcome.phase1_value is not None:
        doc["phase1_value"] = format_rational(outcome.phase1_value)
    return doc


def _emit(doc, out: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_lp(path: str):
    return parse_lp(Path(path).read_bytes())


def _load_cert(path: str) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def cmd_solve(args) -> int:
    lp = _load_lp(args.lp)
    outcome = solve(lp, epsilon_order=args.epsilon_order, start=args.start,
                    oracle_check=args.oracle_check, subset_cap=args.subset_cap)
    _emit(outcome_to_json(outcome), args.out)
    return EXIT_CODES[outcome.status]


def cmd_certify(args) -> int:
    lp = _load_lp(args.lp)
    x, lam = args.x, args.lam
    if args.cert:
        doc = _load_cert(args.cert)
        x = x or tuple(parse_rational(v) for v in doc["x"])
        lam = lam or tuple(parse_rational(v) for v in doc["lambda"])
    if x is None or lam is None:
        raise LPError("certify needs --x and --lambda, or --cert")
    cert = check_certificate(lp, x, lam)
    doc = {
        "optimal": cert.optimal,
        "objective": format_rational(lp.objective(x)),
        "dual_value": format_rational(cert.dual_value),
        "checks": cert.checks.as_dict(),
    }
    _emit(doc, args.out)
    return EXIT_OK if cert.optimal else EXIT_NOT_OPTIMAL


def cmd_vertices(args) -> int:
    lp = _load_lp(args.lp)
    _emit([_strs(v) for v in enumerate_vertices(lp, args.subset_cap)], args.out)
    return EXIT_OK


def cmd_descent(args) -> int:
    lp = _load_lp(args.lp)
    start = args.start
    if start is None:
        found = find_feasible_point(lp)
        if isinstance(found, Infeasible):
            _emit(outcome_to_json(found), args.out)
            return EXIT_INFEASIBLE
        start = found
    out = descend_to_vertex(lp, start)
    doc = {"trace": [{"x": _strs(x), "active_rank": r} for x, r in out.trace]}
    if out.is_vertex:
        doc.update(status="vertex", vertex=_strs(out.vertex))
    else:
        doc.update(status="unbounded", ray=_strs(out.ray))
    _emit(doc, args.out)
    return EXIT_OK if out.is_vertex else EXIT_UNBOUNDED


def cmd_farkas(args) -> int:
    A = parse_matrix(Path(args.matrix).read_bytes())
    c = parse_vector(Path(args.vector).read_bytes())
    result = farkas(A, c)
    _emit({"case": result.case, "witness": _strs(result.witness)}, args.out)
    return EXIT_OK


def cmd_workingset(args) -> int:
    lp = _load_lp(args.lp)
    doc = _load_cert(args.cert)
    lam = tuple(parse_rational(v) for v in doc["lambda"])
    ref = check_certificate(lp, args.at, lam)
    ws = optimal_working_set_at(lp, args.at, ref)
    _emit(list(ws.indices), args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    lp = _load_lp(args.lp)
    svg = render_svg(lp, args.epsilon, args.epsilon_order)
    if args.out:
        Path(args.out).write_text(svg, encoding="utf-8")
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lpcert", description="Exact LP optimality certificates.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def lp_command(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("lp", help="LP file")
        p.add_argument("--out", help="write output here instead of stdout")
        p.set_defaults(func=func)
        return p

    p = lp_command("solve", cmd_solve, "solve an LP and print its certificate")
    p.add_argument("--epsilon-order", type=_int_list, help="powers of eps per inequality, e.g. 2,1,3")
    p.add_argument("--start", type=_rational_list, help="feasible starting point x1,...,xn")
    p.add_argument("--oracle-check", action="store_true", help="cross-check against vertex enumeration")
    p.add_argument("--subset-cap", type=int, default=None)

    p = lp_command("certify", cmd_certify, "check a point and multiplier")
    p.add_argument("--x", type=_rational_list)
    p.add_argument("--lambda", dest="lam", type=_rational_list)
    p.add_argument("--cert", help="certificate JSON from 'solve'")

    p = lp_command("vertices", cmd_vertices, "enumerate all vertices")
    p.add_argument("--subset-cap", type=int, default=None)

    p = lp_command("descent", cmd_descent, "descend from a feasible point to a vertex")
    p.add_argument("--start", type=_rational_list)

    p = lp_command("workingset", cmd_workingset, "optimal working set at an optimal vertex")
    p.add_argument("--at", type=_rational_list, required=True)
    p.add_argument("--cert", required=True, help="certificate JSON supplying lambda")

    p = lp_command("render", cmd_render, "draw a two-variable LP as SVG")
    p.add_argument("--epsilon", type=_rational, help="concrete perturbation size, e.g. 1/2")
    p.add_argument("--epsilon-order", type=_int_list)

    p = sub.add_parser("farkas", help="decide which Farkas alternative holds")
    p.add_argument("matrix", help="matrix file ('rows r cols n' header)")
    p.add_argument("vector", help="vector file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_farkas)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="lpcert: %(levelname)s: %(message)s")
    if getattr(args, "subset_cap", "unset") is None:
        args.subset_cap = default_subset_cap()
    try:
        return args.func(args)
    except (LPError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"lpcert: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
