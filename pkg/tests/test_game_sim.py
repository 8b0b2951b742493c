import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turnsearch.errors import AuditError, InputError
from turnsearch.game_sim import (
    HiderPlacement,
    adversarial_hiders,
    audit_guarantee,
    beyond_tip_slacks,
    max_admissible_epsilon,
    opt_cost,
    simulate,
)
from turnsearch.line_model import LineInstance, build_line_lp, closed_form_line_strategy
from turnsearch.star_model import StarInstance, build_star_lp, closed_form_star_strategy
from turnsearch.strategy import SearchStrategy

EPS = Fraction(1, 10**6)


def test_hider_beyond_second_tip():
    s = closed_form_line_strategy(1, 4)
    out = simulate(s, HiderPlacement(1, Fraction(3, 2) + EPS))
    assert out.found and out.excursion_found == 4 and out.turns == 3
    assert out.total_cost == Fraction(31, 2) + EPS
    assert out.total_cost - (9 * out.opt + 2) == -8 * EPS


def test_found_on_first_leg():
    out = simulate(closed_form_line_strategy(1, 4), HiderPlacement(0, Fraction(1, 4)))
    assert out.found and out.turns == 0 and out.total_cost == Fraction(1, 4)


def test_star_hider_found_after_full_cycle():
    inst = StarInstance(3, 1)
    s = closed_form_star_strategy(inst, 6)
    out = simulate(s, HiderPlacement(0, Fraction(1, 4) + EPS))
    assert out.excursion_found == 4 and out.turns == 3
    # star row k = 1 at equality: 2(x1+x2+x3) + 3d = B + 2M x1
    x = s.steps
    assert out.total_cost - inst.ratio * out.opt - Fraction(15, 4) == (1 - inst.ratio) * EPS
    assert 2 * sum(x[:3]) + 3 == Fraction(15, 4) + 2 * inst.M * x[0]


def test_unfound_within_prefix():
    out = simulate(closed_form_line_strategy(1, 3), HiderPlacement(1, 100))
    assert not out.found and out.excursion_found is None
    assert out.total_cost == 2 * (Fraction(1, 2) + Fraction(3, 2) + Fraction(7, 2)) + 3


def test_simulate_errors():
    s = closed_form_line_strategy(1, 3)
    with pytest.raises(InputError):
        simulate(s, HiderPlacement(2, 1))
    with pytest.raises(InputError):
        simulate(SearchStrategy((), 1), HiderPlacement(0, 1))
    with pytest.raises(InputError):
        HiderPlacement(0, 0)


@pytest.mark.parametrize("hider, expected", [((0, 3.5), 3.5), ((2, 1e-9), 1e-9), ((1, 1.5), 1.5)])
def test_opt_cost(hider, expected):
    assert opt_cost(HiderPlacement(*hider)) == expected


class TestAdversarialHiders:
    def test_two_steps(self):
        s = SearchStrategy((0.5, 1.5), 1)
        probes = adversarial_hiders(s, 0.01)
        assert [(p.ray, p.distance) for p in probes] == [(0, 0.51), (1, 1.51), (0, 0.01), (1, 0.01)]

    def test_zero_epsilon(self):
        with pytest.raises(InputError):
            adversarial_hiders(SearchStrategy((0.5, 1.5), 1), 0)

    def test_epsilon_too_large_reports_limit(self):
        s = closed_form_line_strategy(1, 5)
        assert max_admissible_epsilon(s) == Fraction(1, 2)
        with pytest.raises(InputError, match="1/2"):
            adversarial_hiders(s, 1)

    def test_star_count(self):
        s = closed_form_star_strategy(StarInstance(3, 1), 5)
        probes = adversarial_hiders(s, Fraction(1, 10**9))
        assert len(probes) == 5 + 3
        assert sum(p.distance == Fraction(1, 10**9) for p in probes) == 3


class TestAudit:
    def test_line_guarantee_holds(self):
        a = audit_guarantee(closed_form_line_strategy(1, 20), 9, 2, Fraction(1, 10**8), extra_probes=200)
        assert -Fraction(1, 10**6) <= a.worst_slack <= 0
        assert a.worst_slack == -8 * Fraction(1, 10**8)

    def test_smaller_additive_violated(self):
        a = audit_guarantee(closed_form_line_strategy(1, 20), 9, Fraction(19, 10), Fraction(1, 10**8))
        assert a.worst_slack > 0

    def test_star_m3(self):
        inst = StarInstance(3, 1)
        a = audit_guarantee(closed_form_star_strategy(inst, 30), Fraction(29, 2), Fraction(15, 4), extra_probes=100)
        assert a.worst_slack <= 0

    def test_default_epsilon(self):
        a = audit_guarantee(closed_form_line_strategy(1, 10), 9, 2)
        assert a.epsilon == Fraction(1, 10**8)

    def test_seeded(self):
        s = closed_form_line_strategy(1, 12)
        a = audit_guarantee(s, 9, 2, extra_probes=20, seed=5).to_json()
        b = audit_guarantee(s, 9, 2, extra_probes=20, seed=5).to_json()
        assert a == b

    def test_ties_go_to_first_probe(self):
        # every tip probe has the same slack -8 eps; the earliest wins
        a = audit_guarantee(closed_form_line_strategy(1, 10), 9, 2, Fraction(1, 10**8))
        assert a.argmax == HiderPlacement(0, Fraction(1, 2) + Fraction(1, 10**8))

    def test_report_shape(self):
        a = audit_guarantee(closed_form_line_strategy(1, 6), 9, 2)
        doc = json.loads(a.to_json())
        assert set(doc) == {"c", "B", "d", "m", "epsilon", "worst_slack", "argmax", "probes"}
        assert set(doc["argmax"]) == {"ray", "distance"}
        assert len(a.csv_rows()) == len(a.probes) + 1

    def test_too_short_prefix(self):
        # one step never visits ray 1, so its origin probe is unreachable
        with pytest.raises(AuditError):
            audit_guarantee(SearchStrategy((1,), 1), 9, 2, Fraction(1, 10))


def random_strategy(rng, m, N):
    steps, last = [], [0] * m
    for i in range(N):
        r = i % m
        x = last[r] + Fraction(rng.randint(1, 1000), rng.randint(1, 50))
        steps.append(x)
        last[r] = x
    return SearchStrategy(tuple(steps), Fraction(rng.randint(1, 20), rng.randint(1, 5)), m)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_probe_slack_equals_lp_row(m):
    rng = random.Random(m)
    for _ in range(20):
        s = random_strategy(rng, m, 12)
        c = 9 + Fraction(rng.randint(0, 40), 7)
        B = Fraction(rng.randint(0, 30), 3)
        eps = max_admissible_epsilon(s) / 3
        n = len(s) - m + 1
        lp = build_star_lp(StarInstance(m, s.d), n - 1 if m > 2 else n, c=c) if m > 2 else build_line_lp(
            LineInstance(s.d, c), len(s)
        )
        z = list(s.steps[: lp.var_count - 1]) + [B]
        rows = lp.residuals(z)
        for i, slack in beyond_tip_slacks(s, c, B, eps):
            assert slack == rows[i] + (1 - c) * eps


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(min_value=Fraction(1, 100), max_value=50), min_size=2, max_size=10),
       st.fractions(min_value=Fraction(1, 100), max_value=40),
       st.integers(0, 1))
def test_monotone_discovery(increments, dist, ray):
    steps = []
    last = [Fraction(0), Fraction(0)]
    for i, inc in enumerate(increments):
        last[i % 2] += inc
        steps.append(last[i % 2])
    s = SearchStrategy(tuple(steps), 1)
    a = simulate(s, HiderPlacement(ray, dist))
    b = simulate(s, HiderPlacement(ray, dist + Fraction(1, 7)))
    assert b.total_cost >= a.total_cost
    for out in (a, b):
        assert out.total_cost - out.travel == out.turns * s.d
        if out.found:
            assert out.turns == out.excursion_found - 1
            assert out.travel >= out.opt


@settings(max_examples=30, deadline=None)
@given(st.fractions(min_value=Fraction(1, 10), max_value=10), st.fractions(min_value=Fraction(1, 10), max_value=30))
def test_scale_covariance(scale, dist):
    s = closed_form_line_strategy(1, 10)
    base = simulate(s, HiderPlacement(1, dist))
    scaled = simulate(s.scaled(scale), HiderPlacement(1, dist * scale))
    assert scaled.total_cost == scale * base.total_cost
