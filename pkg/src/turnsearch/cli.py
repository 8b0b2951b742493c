"""Command-line front end.

Every subcommand writes to ``--output`` (default stdout) and uses '.' as the
decimal separator regardless of locale.  ``verify-*`` exit with status 1
when the certificate fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Any, Sequence

from ._numeric import fraction_str
from .errors import TurnSearchError
from .game_sim import HiderPlacement, audit_guarantee, simulate
from .line_model import (
    TABLE1_SIZES,
    LineInstance,
    certify_line_optimality,
    closed_form_line_strategy,
    solve_line,
    tradeoff_curve,
)
from .lp_core import ArithmeticMode, LinearProgram, solve
from .randomized import randomized_additive_bound, solve_randomized_ratio
from .reporting import (
    records_to_json,
    star_limit_records,
    table1_json,
    table1_records,
    table1_rows,
    to_csv,
    tradeoff_records,
)
from .star_model import (
    StarInstance,
    build_star_lp,
    certify_star_optimality,
    closed_form_star_strategy,
    star_additive_term,
    star_limit_table,
)
from .strategy import SearchStrategy

log = logging.getLogger("turnsearch")


def _number(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _int_list(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None


def _c_range(text: str) -> list[Fraction]:
    """``start:stop:step`` inclusive of ``stop``, or a comma list."""
    if ":" not in text:
        return [_number(t) for t in text.split(",")]
    parts = [_number(t) for t in text.split(":")]
    if len(parts) == 2:
        parts.append(Fraction(1))
    start, stop, step = parts
    if step <= 0:
        raise argparse.ArgumentTypeError("c-range step must be positive")
    out = []
    c = start
    while c <= stop:
        out.append(c)
        c += step
    return out


def _hider(text: str) -> tuple[int, Fraction]:
    try:
        ray, dist = text.split(":")
        return int(ray), Fraction(dist)
    except ValueError:
        raise argparse.ArgumentTypeError(f"hider must look like RAY:DISTANCE, got {text!r}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--d", type=_number, default=Fraction(1), help="turn cost (default 1)")
    p.add_argument("--m", type=int, default=2, help="number of rays (default 2)")
    p.add_argument("--n", type=int, default=None, help="truncation depth")
    p.add_argument("--c", type=_number, default=None, help="competitive-ratio coefficient")
    p.add_argument("--c-range", type=_c_range, default=None, help="START:STOP[:STEP] or a comma list")
    p.add_argument("--epsilon", type=_number, default=None, help="probe offset beyond turning points")
    p.add_argument("--mode", choices=["float", "rational"], default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--output", default="-", help="output path, '-' for stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="turnsearch",
        description="LP relaxations, certificates and simulations for search with turn cost.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", parents=[common], help="lambda_n, x and y for a list of depths")
    p.add_argument("--sizes", type=_int_list, default=list(TABLE1_SIZES))

    p = sub.add_parser("verify-line", parents=[common], help="certify the closed-form line optimum")
    p = sub.add_parser("verify-star", parents=[common], help="certify the closed-form star optimum")
    p.add_argument("--show", type=int, default=8, help="dual terms to print")

    sub.add_parser("tradeoff", parents=[common], help="additive term against competitive ratio")

    p = sub.add_parser("star-table", parents=[common], help="star LP limits against (M - m)")
    p.add_argument("--ms", type=_int_list, default=[3, 4, 5, 6])

    p = sub.add_parser("simulate", parents=[common], help="play one hider or audit all adversarial hiders")
    p.add_argument(
        "--strategy",
        default="closed-form",
        help="'closed-form', 'lp' (primal at depth --n) or a path to a step file",
    )
    p.add_argument("--hider", type=_hider, default=None, help="RAY:DISTANCE; omit to run an audit")
    p.add_argument("--B", dest="additive", type=_number, default=None, help="additive term for the audit")
    p.add_argument("--probes", type=int, default=0, help="extra random probes in the audit")

    p = sub.add_parser("randomized", parents=[common], help="randomized competitive ratio")
    p.add_argument("--tolerance", type=float, default=1e-9)

    p = sub.add_parser("solve-lp", parents=[common], help="solve an LP given as JSON")
    p.add_argument("path", nargs="?", default="-", help="JSON file, '-' for stdin")
    return parser


def _mode(args: argparse.Namespace, default: str) -> ArithmeticMode:
    return ArithmeticMode.parse(args.mode or default)


def _emit(args: argparse.Namespace, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _jsonable(v: Any) -> Any:
    if isinstance(v, Fraction):
        return float(v)
    return v


def cmd_table1(args: argparse.Namespace) -> int:
    rows = table1_rows(args.sizes, args.d, _mode(args, "float"))
    if args.format == "json":
        _emit(args, json.dumps(table1_json(rows), indent=2))
    else:
        _emit(args, to_csv(table1_records(rows)))
    return 0


def _certificate_report(cert, extra: dict) -> dict:
    return {
        "verdict": cert.verdict.value,
        "reason": cert.reason,
        "primal_objective": fraction_str(cert.primal_objective)
        if isinstance(cert.primal_objective, Fraction)
        else float(cert.primal_objective),
        "dual_objective": fraction_str(cert.dual_objective)
        if isinstance(cert.dual_objective, Fraction)
        else float(cert.dual_objective),
        "max_relative_residual": cert.max_relative_residual,
        **extra,
    }


def cmd_verify_line(args: argparse.Namespace) -> int:
    n = args.n or 100
    mode = _mode(args, "rational")
    cert = certify_line_optimality(args.d, n, mode)
    report = _certificate_report(cert, {
        "target": "line",
        "d": float(args.d),
        "N": n,
        "mode": mode.name,
        "summary": "primal=dual=2d" if cert.certified else cert.reason,
    })
    _emit(args, json.dumps(report, indent=2))
    return 0 if cert.certified else 1


def cmd_verify_star(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.m < 2:
        parser.error(f"verify-star needs --m >= 2, got {args.m}")
    n = args.n or 60
    mode = _mode(args, "rational")
    inst = StarInstance(args.m, args.d)
    cert = certify_star_optimality(inst, n, mode)
    duals = cert.details["duals"][: args.show]
    first = cert.details["first_index"]
    report = _certificate_report(cert, {
        "target": "star",
        "m": args.m,
        "d": float(args.d),
        "N": n,
        "mode": mode.name,
        "M": fraction_str(inst.M),
        "summary": f"primal=dual=(M-m)d={fraction_str(inst.M - args.m)}d" if cert.certified else cert.reason,
        "dual_prefix": {
            str(first + k): fraction_str(v) if isinstance(v, Fraction) else float(v)
            for k, v in enumerate(duals)
        },
    })
    _emit(args, json.dumps(report, indent=2))
    return 0 if cert.certified else 1


def cmd_tradeoff(args: argparse.Namespace) -> int:
    cs = args.c_range or ([args.c] if args.c is not None else _c_range("9:23:1"))
    n = args.n or 400
    points = tradeoff_curve(args.d, cs, n, _mode(args, "float"))
    records = tradeoff_records(points)
    _emit(args, records_to_json(records) if args.format == "json" else to_csv(records))
    return 0


def cmd_star_table(args: argparse.Namespace) -> int:
    rows = star_limit_table(args.ms, args.n or 400, args.d)
    records = star_limit_records(rows)
    _emit(args, records_to_json(records) if args.format == "json" else to_csv(records))
    return 0


def _strategy(args: argparse.Namespace) -> SearchStrategy:
    n = args.n or 20
    if args.strategy == "closed-form":
        if args.m == 2:
            return closed_form_line_strategy(args.d, n)
        return closed_form_star_strategy(StarInstance(args.m, args.d), n)
    if args.strategy == "lp":
        mode = _mode(args, "float")
        if args.m == 2:
            sol = solve_line(LineInstance(args.d, args.c or 9), n, mode)
            steps = sol.steps[:-1]
        else:
            lp_sol = solve(build_star_lp(StarInstance(args.m, args.d), n), mode)
            steps = tuple(lp_sol.primal[: n])
        return SearchStrategy(steps, args.d, args.m)
    return SearchStrategy.from_file(args.strategy, args.d, args.m)


def cmd_simulate(args: argparse.Namespace) -> int:
    strategy = _strategy(args)
    if args.hider is not None:
        ray, dist = args.hider
        out = simulate(strategy, HiderPlacement(ray, dist))
        doc = {
            "found": out.found,
            "travel": _jsonable(out.travel),
            "turns": out.turns,
            "turn_cost_total": _jsonable(out.turn_cost_total),
            "total_cost": _jsonable(out.total_cost),
            "opt": _jsonable(out.opt),
            "excursion_found": out.excursion_found,
        }
        _emit(args, json.dumps(doc, indent=2))
        return 0
    inst = StarInstance(args.m, args.d)
    c = args.c if args.c is not None else inst.ratio
    B = args.additive if args.additive is not None else star_additive_term(inst)
    audit = audit_guarantee(strategy, c, B, args.epsilon, args.probes, args.seed)
    if args.format == "csv":
        _emit(args, to_csv(audit.csv_rows()))
    else:
        _emit(args, audit.to_json())
    return 0


def cmd_randomized(args: argparse.Namespace) -> int:
    r = solve_randomized_ratio(args.tolerance)
    doc = {"a": r.a, "q": r.q, "d": float(args.d), "additive_bound": randomized_additive_bound(r.q, float(args.d))}
    _emit(args, json.dumps(doc, indent=2))
    return 0


def cmd_solve_lp(args: argparse.Namespace) -> int:
    if args.path == "-":
        text = sys.stdin.read()
    else:
        with open(args.path, encoding="utf-8") as fh:
            text = fh.read()
    lp = LinearProgram.from_json(text)
    sol = solve(lp, _mode(args, "float"))
    _emit(args, json.dumps(sol.to_dict(), indent=2))
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    handlers = {
        "table1": cmd_table1,
        "verify-line": cmd_verify_line,
        "tradeoff": cmd_tradeoff,
        "star-table": cmd_star_table,
        "simulate": cmd_simulate,
        "randomized": cmd_randomized,
        "solve-lp": cmd_solve_lp,
    }
    try:
        if args.command == "verify-star":
            return cmd_verify_star(args, parser)
        return handlers[args.command](args)
    except (TurnSearchError, OSError) as exc:
        print(f"turnsearch: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
