"""Tabular emission (CSV/JSON) for the command line and notebooks."""

from __future__ import annotations

import csv
import io
import json
import logging
from typing import Any, Iterable, Sequence

from ._numeric import fmt_fixed, fmt_truncated, fraction_str
from .errors import TurnSearchError
from .line_model import LineInstance, TradeoffPoint, solve_line
from .lp_core import FLOAT64, ArithmeticMode
from .star_model import StarDualSequence, StarLimitRow

log = logging.getLogger(__name__)

TABLE1_HEADER = (
    ["n", "lambda", "lambda_t4"]
    + [f"x{i}" for i in range(1, 6)]
    + [f"y{i}" for i in range(1, 6)]
    + [f"x{i}_t4" for i in range(1, 6)]
    + [f"y{i}_t4" for i in range(1, 6)]
    + ["error"]
)


def table1_rows(sizes: Iterable[int], d: Any = 1, mode: ArithmeticMode = FLOAT64) -> list[dict]:
    """One row per depth: ``lambda_n``, the first five primal steps and duals.

    A failing depth yields a row carrying only ``n`` and ``error``.
    """
    rows = []
    inst = LineInstance(d)
    for n in sizes:
        try:
            sol = solve_line(inst, n, mode)
        except TurnSearchError as exc:
            log.warning("depth %d failed: %s", n, exc)
            rows.append({"n": n, "error": str(exc)})
            continue
        rows.append({
            "n": n,
            "lambda": sol.lam,
            "x": list(sol.steps[:5]),
            "y": list(sol.duals[:5]),
            "error": "",
        })
    return rows


def table1_records(rows: Sequence[dict]) -> list[list[str]]:
    out = [list(TABLE1_HEADER)]
    for row in rows:
        if row.get("error"):
            out.append([str(row["n"])] + [""] * (len(TABLE1_HEADER) - 2) + [row["error"]])
            continue
        xs = row["x"] + [None] * (5 - len(row["x"]))
        ys = row["y"] + [None] * (5 - len(row["y"]))
        cells = [str(row["n"]), fmt_fixed(row["lambda"]), fmt_truncated(row["lambda"])]
        cells += ["" if v is None else fmt_fixed(v) for v in xs + ys]
        cells += ["" if v is None else fmt_truncated(v) for v in xs + ys]
        out.append(cells + [""])
    return out


def table1_json(rows: Sequence[dict]) -> list[dict]:
    out = []
    for row in rows:
        if row.get("error"):
            out.append({"n": row["n"], "error": row["error"]})
            continue
        out.append({
            "n": row["n"],
            "lambda": float(row["lambda"]),
            "lambda_t4": fmt_truncated(row["lambda"]),
            "x": [float(v) for v in row["x"]],
            "y": [float(v) for v in row["y"]],
            "x_t4": [fmt_truncated(v) for v in row["x"]],
            "y_t4": [fmt_truncated(v) for v in row["y"]],
        })
    return out


def lambda_records(pairs: Iterable[tuple[int, Any]]) -> list[list[str]]:
    out = [["n", "lambda", "lambda_t4"]]
    out += [[str(n), fmt_fixed(v), fmt_truncated(v)] for n, v in pairs]
    return out


def tradeoff_records(points: Iterable[TradeoffPoint]) -> list[list[str]]:
    out = [["c", "n", "lower_bound", "extrapolated", "lower_bound_t4"]]
    for p in points:
        out.append([
            fmt_fixed(p.c),
            str(p.n),
            fmt_fixed(p.lower_bound),
            fmt_fixed(p.extrapolated),
            fmt_truncated(p.lower_bound),
        ])
    return out


def star_limit_records(rows: Iterable[StarLimitRow]) -> list[list[str]]:
    out = [["m", "n", "lambda", "extrapolated", "closed_form_limit"]]
    for r in rows:
        out.append([str(r.m), str(r.n), fmt_fixed(r.lam), fmt_fixed(r.extrapolated), fmt_fixed(r.closed_form_limit)])
    return out


def dual_records(seq: StarDualSequence, exact: bool = True) -> list[list[str]]:
    header = ["j", "y", "y_fraction"] if exact else ["j", "y"]
    out = [header]
    for j, v in seq.items():
        row = [str(j), f"{float(v):.12g}"]
        if exact:
            row.append(fraction_str(v))
        out.append(row)
    return out


def to_csv(records: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(records)
    return buf.getvalue()


def records_to_json(records: Sequence[Sequence[str]]) -> str:
    header, *body = records
    return json.dumps([dict(zip(header, row)) for row in body], indent=2)
