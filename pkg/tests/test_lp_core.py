import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_lp
from turnsearch.errors import InputError, OracleNotApplicable, SolverError
from turnsearch.line_model import LineInstance, build_line_lp
from turnsearch.lp_core import (
    FLOAT64,
    RATIONAL,
    ArithmeticMode,
    LinearProgram,
    Status,
    solve,
    solve_equality_oracle,
)


def line_lp(n, d=1):
    return build_line_lp(LineInstance(d), n)


def test_n1_line_system():
    # minimize B s.t. 2 x1 + 1 <= B
    sol = solve(LinearProgram([0, 1], [[2, -1]], [-1]))
    assert sol.status is Status.OPTIMAL
    assert sol.objective == pytest.approx(1.0)
    assert sol.primal[0] == 0


def test_zero_case():
    sol = solve(LinearProgram([1], [[-1]], [0]))
    assert sol.objective == 0
    assert sol.primal[0] == 0


def test_n2_line_system_with_duals():
    lp = line_lp(2)
    sol = solve(lp)
    assert sol.objective == pytest.approx(1.25)
    assert sol.primal[0] == pytest.approx(0.125)
    np.testing.assert_allclose(sol.dual, [0.75, 0.25])
    assert sol.violations(lp) == []


@pytest.mark.parametrize(
    "n, expected",
    [(1, Fraction(1)), (2, Fraction(5, 4)), (3, Fraction(17, 12)), (4, Fraction(49, 32))],
)
def test_rational_values_are_exact(n, expected):
    lp = line_lp(n)
    sol = solve(lp, RATIONAL)
    assert sol.objective == expected
    assert sol.violations(lp, tol=0) == []
    # complementary slackness is exactly zero in rational mode
    slack = lp.rhs - lp.matrix.dot(sol.primal)
    assert all(v == 0 for v in sol.dual * slack)


def test_rational_duals_n4():
    sol = solve(line_lp(4), RATIONAL)
    assert list(sol.dual) == [Fraction(5, 8), Fraction(1, 4), Fraction(3, 32), Fraction(1, 32)]


def test_infeasible():
    # x <= -1 with x >= 0
    sol = solve(LinearProgram([1], [[1]], [-1]))
    assert sol.status is Status.INFEASIBLE
    assert len(sol.primal) == 0 and len(sol.dual) == 0


def test_unbounded():
    sol = solve(LinearProgram([-1, 0], [[0, 1]], [3]))
    assert sol.status is Status.UNBOUNDED


def test_dimension_mismatch():
    with pytest.raises(InputError):
        LinearProgram([0, 1], [[1, 2, 3]], [1])
    with pytest.raises(InputError):
        LinearProgram([0, 1], [[1, 2]], [1, 2])
    with pytest.raises(InputError):
        LinearProgram([1], [], [])


def test_nonfinite_rejected():
    with pytest.raises(InputError):
        LinearProgram([1.0], [[float("nan")]], [1.0])


def test_float_tolerance_must_be_positive():
    with pytest.raises(InputError):
        ArithmeticMode.float64(0.0)


def test_deterministic():
    lp = line_lp(30)
    a, b = solve(lp), solve(lp)
    assert a.objective == b.objective
    assert np.array_equal(a.primal, b.primal) and np.array_equal(a.dual, b.dual)


def test_pivot_guard(monkeypatch):
    from turnsearch import lp_core

    real_init = lp_core._Simplex.__init__

    def tiny_guard(self, *args, **kwargs):
        real_init(self, *args, **kwargs)
        self.max_pivots = 1

    monkeypatch.setattr(lp_core._Simplex, "__init__", tiny_guard)
    with pytest.raises(SolverError):
        solve(line_lp(5))


def test_degenerate_lp_terminates():
    # classic cycling example (Beale); Bland's rule must terminate
    c = [Fraction(-3, 4), 150, Fraction(-1, 50), 6]
    A = [
        [Fraction(1, 4), -60, Fraction(-1, 25), 9],
        [Fraction(1, 2), -90, Fraction(-1, 50), 3],
        [0, 0, 1, 0],
    ]
    b = [0, 0, 1]
    lp = LinearProgram(c, A, b)
    sol = solve(lp, RATIONAL)
    assert sol.objective == Fraction(-1, 20)
    assert sol.violations(lp, tol=0) == []


@pytest.mark.parametrize("n", list(range(1, 21)))
def test_equality_oracle_agrees(n):
    lp = line_lp(n)
    a = solve(lp)
    b = solve_equality_oracle(lp)
    assert a.objective == pytest.approx(b.objective, rel=1e-9, abs=1e-9)
    np.testing.assert_allclose(a.dual, b.dual, atol=1e-9)


def test_equality_oracle_n10_value():
    sol = solve_equality_oracle(line_lp(10))
    assert int(sol.objective * 10**4) / 10**4 == 1.8001


def test_equality_oracle_rational():
    sol = solve_equality_oracle(line_lp(4), RATIONAL)
    assert sol.objective == Fraction(49, 32)


def test_equality_oracle_singular():
    lp = LinearProgram([1, 1], [[-1, -1], [-2, -2]], [-1, -2])
    with pytest.raises(OracleNotApplicable):
        solve_equality_oracle(lp)


def test_equality_oracle_rejects_infeasible_tight_point():
    # x1 <= x2 and x1 + x2 >= 2 meet at (1, 1) with cost 3, but (0, 2) costs 2
    lp = LinearProgram([2, 1], [[1, -1], [-1, -1]], [0, -2])
    with pytest.raises(OracleNotApplicable):
        solve_equality_oracle(lp)


def test_json_roundtrip_exact():
    lp = line_lp(5)
    text = lp.to_json()
    doc = json.loads(text)
    assert set(doc) == {"sense", "objective", "rows", "var_count"}
    assert doc["var_count"] == 6
    assert LinearProgram.from_json(text) == lp


def test_json_decimals_parse_exactly():
    lp = LinearProgram.from_json(
        '{"sense": "minimize", "objective": [1], "rows": [{"coeffs": [-1], "rhs": -0.1}], "var_count": 1}'
    )
    assert solve(lp, RATIONAL).objective == Fraction(1, 10)


def test_json_bad_var_count():
    with pytest.raises(InputError):
        LinearProgram.from_json('{"objective": [1], "rows": [{"coeffs": [1], "rhs": 1}], "var_count": 2}')


small_int = st.integers(-5, 5)


@st.composite
def bounded_lps(draw):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(1, 3))
    c = draw(st.lists(small_int, min_size=n, max_size=n))
    A = [draw(st.lists(small_int, min_size=n, max_size=n)) for _ in range(m)]
    b = draw(st.lists(st.integers(-5, 10), min_size=m, max_size=m))
    # box row keeps every instance bounded
    A.append([1] * n)
    b.append(10)
    return c, A, b


@settings(max_examples=150, deadline=None)
@given(bounded_lps())
def test_matches_vertex_enumeration(data):
    c, A, b = data
    expected = brute_force_lp(c, A, b)
    lp = LinearProgram(c, A, b)
    exact = solve(lp, RATIONAL)
    approx = solve(lp, FLOAT64)
    if expected is None:
        assert exact.status is Status.INFEASIBLE
        assert approx.status is Status.INFEASIBLE
        return
    assert exact.status is Status.OPTIMAL
    assert exact.objective == expected
    assert exact.violations(lp, tol=0) == []
    assert approx.objective == pytest.approx(float(expected), abs=1e-9)
    assert approx.violations(lp) == []


@settings(max_examples=60, deadline=None)
@given(bounded_lps())
def test_strong_duality_and_slackness(data):
    c, A, b = data
    lp = LinearProgram(c, A, b)
    sol = solve(lp, RATIONAL)
    if not sol.optimal:
        return
    assert sol.objective == sol.dual_objective(lp)
    slack = lp.rhs - lp.matrix.dot(sol.primal)
    assert all(y * s == 0 for y, s in zip(sol.dual, slack))
