"""Dense LP solving with primal and dual certificates.

Problems are always of the form::

    minimize    c @ x
    subject to  A @ x <= b,   x >= 0

The solver is a two-phase tableau simplex with Bland's rule.  Both phases
run on a single numpy array whose dtype is ``float64`` in float mode and
``object`` (holding :class:`fractions.Fraction`) in exact mode, so the same
pivoting code serves both arithmetics.

Dual multipliers are reported as nonnegative row weights ``y``.  With that
sign convention the dual problem reads ``maximize -b @ y`` subject to
``A.T @ y >= -c``, and at an optimum ``c @ x == -b @ y``.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import InputError, OracleNotApplicable, SolverError

__all__ = [
    "ArithmeticMode",
    "FLOAT64",
    "RATIONAL",
    "LinearProgram",
    "LpSolution",
    "Status",
    "solve",
    "solve_equality_oracle",
]


@dataclass(frozen=True)
class ArithmeticMode:
    """Float64 with a pivot/feasibility tolerance, or exact rationals."""

    exact: bool = False
    tolerance: float = 1e-9

    def __post_init__(self) -> None:
        if not self.exact and not (self.tolerance > 0 and math.isfinite(self.tolerance)):
            raise InputError(f"float tolerance must be positive, got {self.tolerance!r}")

    @classmethod
    def float64(cls, tolerance: float = 1e-9) -> ArithmeticMode:
        return cls(exact=False, tolerance=tolerance)

    @classmethod
    def rational(cls) -> ArithmeticMode:
        return cls(exact=True, tolerance=0.0)

    @classmethod
    def parse(cls, name: str, tolerance: float = 1e-9) -> ArithmeticMode:
        if name in ("float", "float64"):
            return cls.float64(tolerance)
        if name in ("rational", "exact"):
            return cls.rational()
        raise InputError(f"unknown arithmetic mode {name!r}")

    @property
    def tol(self) -> float:
        return 0.0 if self.exact else self.tolerance

    @property
    def name(self) -> str:
        return "rational" if self.exact else "float"

    def scalar(self, value: Any) -> Any:
        return _to_fraction(value) if self.exact else float(value)

    def array(self, values: Any) -> np.ndarray:
        arr = np.asarray(values, dtype=object)
        if self.exact:
            out = np.empty(arr.shape, dtype=object)
            out.flat[:] = [_to_fraction(v) for v in arr.flat]
            return out
        return arr.astype(np.float64)


FLOAT64 = ArithmeticMode.float64()
RATIONAL = ArithmeticMode.rational()


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(float(value))


def _coerce(values: Any, ndim: int) -> np.ndarray:
    """Keep exact entries exact; anything containing a float becomes float64."""
    arr = np.array(values, dtype=object)
    if arr.ndim != ndim:
        raise InputError(f"expected a {ndim}-d array, got shape {arr.shape}")
    flat = list(arr.flat)
    if any(isinstance(v, (float, np.floating)) for v in flat):
        out = arr.astype(np.float64)
        if not np.all(np.isfinite(out)):
            raise InputError("LP data must be finite")
        return out
    out = np.empty(arr.shape, dtype=object)
    try:
        out.flat[:] = [_to_fraction(v) for v in flat]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"non-numeric LP entry: {exc}") from None
    return out


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """``minimize objective @ x`` s.t. ``matrix @ x <= rhs`` and ``x >= 0``."""

    objective: np.ndarray
    matrix: np.ndarray
    rhs: np.ndarray
    sense: str = "minimize"

    def __post_init__(self) -> None:
        if self.sense != "minimize":
            raise InputError(f"only 'minimize' is supported, got {self.sense!r}")
        c = _coerce(self.objective, 1)
        b = _coerce(self.rhs, 1)
        rows = list(self.matrix)
        if not rows:
            raise InputError("an LP needs at least one constraint row")
        if len(c) < 1:
            raise InputError("an LP needs at least one variable")
        for k, row in enumerate(rows):
            if len(row) != len(c):
                raise InputError(
                    f"row {k} has {len(row)} coefficients, expected var_count={len(c)}"
                )
        a = _coerce(rows, 2)
        if len(b) != a.shape[0]:
            raise InputError(f"{a.shape[0]} rows but {len(b)} right-hand sides")
        object.__setattr__(self, "objective", _readonly(c))
        object.__setattr__(self, "matrix", _readonly(a))
        object.__setattr__(self, "rhs", _readonly(b))

    @property
    def var_count(self) -> int:
        return len(self.objective)

    @property
    def row_count(self) -> int:
        return len(self.rhs)

    @property
    def rows(self) -> list[tuple[tuple, str, Any]]:
        return [(tuple(r), "<=", v) for r, v in zip(self.matrix, self.rhs)]

    @property
    def is_exact(self) -> bool:
        return self.matrix.dtype == object

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearProgram):
            return NotImplemented
        return (
            self.matrix.shape == other.matrix.shape
            and bool(np.all(self.objective == other.objective))
            and bool(np.all(self.matrix == other.matrix))
            and bool(np.all(self.rhs == other.rhs))
        )

    __hash__ = None  # type: ignore[assignment]

    def residuals(self, x: Sequence) -> np.ndarray:
        """``A @ x - b``; nonpositive entries are satisfied rows."""
        return np.asarray(self.matrix.dot(np.asarray(x, dtype=self.matrix.dtype))) - self.rhs

    # JSON: {sense, objective[], rows[{coeffs[], rhs}], var_count}
    def to_dict(self) -> dict:
        return {
            "sense": self.sense,
            "objective": [_json_number(v) for v in self.objective],
            "rows": [
                {"coeffs": [_json_number(v) for v in row], "rhs": _json_number(rhs)}
                for row, rhs in zip(self.matrix, self.rhs)
            ],
            "var_count": self.var_count,
        }

    def to_json(self, **kwargs: Any) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, doc: dict) -> LinearProgram:
        try:
            rows = doc["rows"]
            lp = cls(
                objective=doc["objective"],
                matrix=[r["coeffs"] for r in rows],
                rhs=[r["rhs"] for r in rows],
                sense=doc.get("sense", "minimize"),
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed LP document: {exc!r}") from None
        if "var_count" in doc and doc["var_count"] != lp.var_count:
            raise InputError(f"var_count={doc['var_count']} but objective has {lp.var_count} entries")
        for k, r in enumerate(rows):
            if r.get("relation", "<=") not in ("<=", "≤"):
                raise InputError(f"row {k}: only '<=' rows are supported")
        return lp

    @classmethod
    def from_json(cls, text: str) -> LinearProgram:
        # Decimal literals parse as exact fractions; floats only appear on request.
        try:
            doc = json.loads(text, parse_float=Fraction)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None
        return cls.from_dict(_fractions_from_strings(doc))


def _fractions_from_strings(doc: Any) -> Any:
    if isinstance(doc, dict):
        return {k: (v if k in ("sense", "relation") else _fractions_from_strings(v)) for k, v in doc.items()}
    if isinstance(doc, list):
        return [_fractions_from_strings(v) for v in doc]
    if isinstance(doc, str):
        return Fraction(doc)
    return doc


def _json_number(v: Any) -> Any:
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    if isinstance(v, (np.floating, float)):
        return float(v)
    return v


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True, eq=False)
class LpSolution:
    status: Status
    primal: np.ndarray
    dual: np.ndarray
    objective: Any

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL

    def dual_objective(self, lp: LinearProgram) -> Any:
        return -lp.rhs.dot(self.dual)

    def violations(self, lp: LinearProgram, tol: float = 1e-9) -> list[str]:
        """Certificate checks; an empty list means the solution is a verified optimum."""
        if not self.optimal:
            return [f"status is {self.status.value}"]
        out = []
        x, y = self.primal, self.dual
        if np.any(x < -tol):
            out.append("primal has negative entries")
        if np.any(y < -tol):
            out.append("dual has negative entries")
        A, b, c = lp.matrix, lp.rhs, lp.objective
        # primal entries grow geometrically in the search LPs, so feasibility
        # is judged relative to the magnitude of the terms in each row
        row_scale = np.maximum(1.0, (np.abs(A).dot(np.abs(x)) + np.abs(b)).astype(float))
        col_scale = np.maximum(1.0, (np.abs(A).T.dot(np.abs(y)) + np.abs(c)).astype(float))
        slack = b - A.dot(x)
        if np.any(slack < -tol * row_scale):
            out.append(f"primal infeasible (row {int(np.argmin(slack / row_scale))})")
        reduced = c + A.T.dot(y)
        if np.any(reduced < -tol * col_scale):
            out.append(f"dual infeasible (column {int(np.argmin(reduced / col_scale))})")
        dual_obj = self.dual_objective(lp)
        if abs(self.objective - dual_obj) > tol * max(1.0, abs(float(dual_obj))):
            out.append(f"duality gap {float(self.objective - dual_obj):.3g}")
        comp = np.abs(y * slack)
        if np.any(comp > tol * np.maximum(1.0, np.abs(y) * row_scale)):
            out.append("complementary slackness violated")
        return out

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "objective": _json_number(self.objective),
            "primal": [_json_number(v) for v in self.primal],
            "dual": [_json_number(v) for v in self.dual],
        }


def _empty(status: Status, dtype: Any) -> LpSolution:
    none = _readonly(np.zeros(0, dtype=dtype))
    return LpSolution(status, none, none, None)


# -- simplex ---------------------------------------------------------------


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] = T[row] / T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0
    if T.dtype == object:
        # Fraction arithmetic is slow; only touch rows that change
        hit = np.flatnonzero(factors != 0)
        if len(hit):
            T[hit] -= np.outer(factors[hit], T[row])
    else:
        T -= np.outer(factors, T[row])
    T[:, col] = 0
    T[row, col] = 1


class _Simplex:
    """Tableau rows: m constraints, then the phase-2 and phase-1 cost rows."""

    def __init__(self, lp: LinearProgram, mode: ArithmeticMode) -> None:
        self.mode = mode
        self.tol = mode.tol
        A = mode.array(lp.matrix)
        b = mode.array(lp.rhs)
        c = mode.array(lp.objective)
        m, n = A.shape
        zero, one = (Fraction(0), Fraction(1)) if mode.exact else (0.0, 1.0)
        negative = [i for i in range(m) if b[i] < 0]
        k = len(negative)
        self.m, self.n, self.k = m, n, k
        width = n + m + k + 1
        dtype = object if mode.exact else np.float64
        T = np.full((m + 2, width), zero, dtype=dtype)
        T[:m, :n] = A
        for i in range(m):
            T[i, n + i] = one
        T[:m, -1] = b
        self.basis = [n + i for i in range(m)]
        for a, i in enumerate(negative):
            T[i] = -T[i]
            T[i, n + m + a] = one
            self.basis[i] = n + m + a
        T[m, :n] = c
        for i in negative:
            T[m + 1] -= T[i]
        T[m + 1, n + m : n + m + k] = zero
        self.T = T
        self.pivots = 0
        self.max_pivots = 50 * (m + n + k) + 1000

    def _entering(self, cost_row: int, limit: int) -> int | None:
        z = self.T[cost_row, :limit]
        below = np.flatnonzero(z < -self.tol)
        return int(below[0]) if len(below) else None

    def _leaving(self, col: int) -> int | None:
        T, tol = self.T, self.tol
        column = T[: self.m, col]
        cand = np.flatnonzero(column > tol)
        if not len(cand):
            return None
        ratios = T[cand, -1] / column[cand]
        best = ratios.min()
        if self.mode.exact:
            ties = cand[ratios == best]
        else:
            ties = cand[ratios <= best + tol * max(1.0, abs(float(best)))]
        return int(min(ties, key=lambda i: self.basis[i]))

    def _step(self, row: int, col: int) -> None:
        self.pivots += 1
        if self.pivots > self.max_pivots:
            raise SolverError(f"pivot guard of {self.max_pivots} exceeded")
        _pivot(self.T, row, col)
        self.basis[row] = col

    def run(self, cost_row: int, limit: int) -> bool:
        """Bland-rule pivoting; returns False if the LP is unbounded."""
        while True:
            col = self._entering(cost_row, limit)
            if col is None:
                return True
            row = self._leaving(col)
            if row is None:
                return False
            self._step(row, col)

    def drive_out_artificials(self) -> None:
        n, m = self.n, self.m
        for i in range(m):
            if self.basis[i] < n + m:
                continue
            row = self.T[i, : n + m]
            nz = np.flatnonzero(np.abs(row) > self.tol)
            if len(nz):
                self._step(i, int(nz[0]))


def _refine(lp: LinearProgram, basis: list[int]) -> tuple[np.ndarray, np.ndarray] | None:
    """Recompute the basic solution from the original data at the final basis.

    Pivoting accumulates rounding error in proportion to the spread of the
    entries; one LU solve against the original columns removes it.  Returns
    None when the basis still holds an artificial column.
    """
    m, n = lp.row_count, lp.var_count
    if any(v >= n + m for v in basis):
        return None
    A = lp.matrix.astype(np.float64)
    full = np.hstack([A, np.eye(m)])
    cost = np.concatenate([lp.objective.astype(np.float64), np.zeros(m)])
    Bmat = full[:, basis]
    try:
        xb = np.linalg.solve(Bmat, lp.rhs.astype(np.float64))
        u = np.linalg.solve(Bmat.T, cost[basis])
    except np.linalg.LinAlgError:
        return None
    x = np.zeros(n)
    for val, var in zip(xb, basis):
        if var < n:
            x[var] = val
    # reduced cost of slack j is 0 - u_j
    return x, -u


def solve(lp: LinearProgram, mode: ArithmeticMode = FLOAT64) -> LpSolution:
    """Solve ``lp`` and return primal and dual optimal solutions.

    Infeasible and unbounded problems return empty vectors and ``objective=None``.
    The dual ``y`` is read from the reduced costs of the slack columns in the
    final tableau.  Raises :class:`SolverError` if the pivot guard trips.
    """
    if not isinstance(lp, LinearProgram):
        raise InputError("solve() expects a LinearProgram")
    dtype = object if mode.exact else np.float64
    s = _Simplex(lp, mode)
    m, n, k = s.m, s.n, s.k
    if k:
        s.run(m + 1, n + m + k)
        infeas = -s.T[m + 1, -1]
        scale = 1.0 + float(np.max(np.abs(mode.array(lp.rhs))))
        if infeas > s.tol * scale:
            return _empty(Status.INFEASIBLE, dtype)
        s.drive_out_artificials()
    if not s.run(m, n + m):
        return _empty(Status.UNBOUNDED, dtype)

    zero = Fraction(0) if mode.exact else 0.0
    x = np.full(n, zero, dtype=dtype)
    for i, var in enumerate(s.basis):
        if var < n:
            x[var] = s.T[i, -1]
    y = s.T[m, n : n + m].copy()
    if not mode.exact:
        refined = _refine(lp, s.basis)
        if refined is not None:
            x, y = refined
        x = np.maximum(x, 0.0)
        y = np.maximum(y, 0.0)
    c = mode.array(lp.objective)
    objective = c.dot(x)
    return LpSolution(Status.OPTIMAL, _readonly(x), _readonly(y), objective)


# -- independent equality oracle -------------------------------------------


def _gauss_solve(A: np.ndarray, b: np.ndarray, mode: ArithmeticMode) -> np.ndarray:
    """Gaussian elimination with partial pivoting on a square system."""
    A = A.copy()
    b = b.copy()
    size = len(b)
    scale = float(np.max(np.abs(A))) if size else 1.0
    for col in range(size):
        mags = np.abs(A[col:, col])
        p = col + int(np.argmax(mags))
        if mode.exact:
            if A[p, col] == 0:
                raise OracleNotApplicable("singular system")
        elif abs(A[p, col]) <= mode.tolerance * max(scale, 1.0):
            raise OracleNotApplicable("singular system")
        if p != col:
            A[[col, p]] = A[[p, col]]
            b[[col, p]] = b[[p, col]]
        f = A[col + 1 :, col] / A[col, col]
        A[col + 1 :] -= np.outer(f, A[col])
        b[col + 1 :] -= f * b[col]
    x = b.copy()
    for row in range(size - 1, -1, -1):
        x[row] = (b[row] - A[row, row + 1 :].dot(x[row + 1 :])) / A[row, row]
    return x


def solve_equality_oracle(lp: LinearProgram, mode: ArithmeticMode = FLOAT64) -> LpSolution:
    """Solve by assuming every row is tight.

    Zero-cost variables whose column is entirely nonnegative can only tighten
    the constraints, so they are fixed at 0 first.  The remaining system must
    be square; it is solved by elimination, and the transposed system gives
    the duals.  Raises :class:`OracleNotApplicable` when the system is
    singular, not square, or the tight solution is not primal/dual feasible.
    """
    A = mode.array(lp.matrix)
    b = mode.array(lp.rhs)
    c = mode.array(lp.objective)
    keep = [j for j in range(lp.var_count) if not (c[j] >= 0 and np.all(A[:, j] >= 0))]
    if len(keep) != lp.row_count:
        raise OracleNotApplicable(
            f"{lp.row_count} rows but {len(keep)} free columns; system is not square"
        )
    sub = A[:, keep]
    xs = _gauss_solve(sub, b, mode)
    u = _gauss_solve(sub.T.copy(), c[keep], mode)
    y = -u
    tol = mode.tol
    if np.any(xs < -tol * max(1.0, float(np.max(np.abs(xs))))):
        raise OracleNotApplicable("tight solution is not primal feasible")
    if np.any(y < -tol):
        raise OracleNotApplicable("induced duals are negative")
    dtype = object if mode.exact else np.float64
    zero = Fraction(0) if mode.exact else 0.0
    x = np.full(lp.var_count, zero, dtype=dtype)
    x[keep] = xs
    if not mode.exact:
        x = np.maximum(x, 0.0)
        y = np.maximum(y, 0.0)
    return LpSolution(Status.OPTIMAL, _readonly(x), _readonly(y), c.dot(x))


def as_float_list(values: Iterable) -> list[float]:
    return [float(v) for v in values]
