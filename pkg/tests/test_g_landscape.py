"""Landscape function: exact powers, critical points, the model supremum."""

import math
from fractions import Fraction

import mpmath as mp
import pytest

from hypconv import PfqSpec, from_pfq
from hypconv.g_landscape import (
    critical_points,
    g_eval,
    g_pow_exact,
    ghat_eval,
    ghat_sup,
    solve_y,
    tau,
    tau_str,
    y_asymptote,
    y_bounds,
)
from hypconv.term_model import BivarPoly, PochhammerFactor, ProperTerm, validate

F = Fraction


def gauss(a, b, c, alpha, gamma):
    return from_pfq(PfqSpec.of(
        upper=[((a, 0), alpha), ((b, 0), 0)],
        lower=[((c, 0), gamma)],
        argument=(1, 0)))


def plain_term(xi, theta, factors):
    return validate(ProperTerm.of(BivarPoly.constant(1), xi, theta, factors))


def test_g_pow_exact_matches_float_eval():
    terms = [
        gauss(F(1, 3), F(-1, 2), F(9, 4), -2, -2),
        gauss(F(1, 2), F(-13, 4), F(5, 4), 1, 2),
        plain_term(F(1, 2), F(1, 3), [PochhammerFactor.of(F(1, 3), 2, 1),
                                      PochhammerFactor.of(F(1, 2), -2, 1)]),
    ]
    for term in terms:
        for t in [F(1, 3), F(1, 2), F(1), F(7, 5), F(3), F(25, 4)]:
            q = t.denominator
            exact = float(g_pow_exact(term, t))
            approx = g_eval(term, float(t)) ** (2 * q)
            assert math.isclose(exact, approx, rel_tol=1e-9)


def test_g_constant_when_multipliers_match():
    # alpha = gamma makes the factor contributions cancel exactly
    analysis = critical_points(gauss(F(1, 3), F(-1, 2), F(9, 4), -2, -2))
    assert analysis.g_is_constant
    assert analysis.constant_abs2 == 1
    assert analysis.points == ()


def test_critical_points_against_numeric_scan():
    term = plain_term(F(1, 2), F(1, 3), [PochhammerFactor.of(F(1, 3), 2, 1),
                                         PochhammerFactor.of(F(1, 2), -2, 1)])
    analysis = critical_points(term)
    assert not analysis.g_is_constant
    assert analysis.points
    h = 1e-6
    for pt in analysis.points:
        t = pt.t_float()
        gv = g_eval(term, t)
        if pt.g_equals_one:
            assert abs(gv - 1.0) < 1e-9
        elif pt.g_below_one:
            assert gv < 1.0
        else:
            assert gv > 1.0
        if not pt.in_omega:
            # stationary: the log-derivative changes sign across the point
            lo = math.log(g_eval(term, t - h)) - math.log(gv)
            hi = math.log(g_eval(term, t + h)) - math.log(gv)
            assert abs(lo + hi) < 10 * h  # symmetric to second order


def test_critical_points_requires_balanced_n_direction():
    term = plain_term(F(1, 2), F(1, 3), [PochhammerFactor.of(F(1, 3), 1, 1)])
    with pytest.raises(ValueError):
        critical_points(term)


def numeric_ghat_max(alpha, gamma, t_hi=1e4):
    ts = [10.0 ** (e / 50.0) for e in range(-400, int(50 * math.log10(t_hi)) + 1)]
    best = max(range(len(ts)), key=lambda i: ghat_eval(alpha, gamma, ts[i]))
    lo = ts[max(best - 1, 0)]
    hi = ts[min(best + 1, len(ts) - 1)]
    for _ in range(100):
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if ghat_eval(alpha, gamma, m1) < ghat_eval(alpha, gamma, m2):
            lo = m1
        else:
            hi = m2
    return ghat_eval(alpha, gamma, 0.5 * (lo + hi))


def test_ghat_sup_case_table():
    cases = {
        (2, 2): "equal",
        (1, 0): "gamma-zero",
        (3, 1): "gamma-positive",
        (0, -1): "alpha-zero",
        (-2, -1): "alpha-below-gamma",
        (-1, -2): "between",
        (1, -1): "opposite",
    }
    for (a, g), want in cases.items():
        assert ghat_sup(a, g).case == want


def test_ghat_sup_attained_cases_match_scan():
    for a, g in [(2, 2), (0, -1), (-2, -1), (-1, -2), (1, -1), (-3, -1)]:
        s = ghat_sup(a, g)
        assert s.is_finite
        assert abs(s.value - numeric_ghat_max(a, g)) < 1e-6


def test_ghat_sup_asymptotic_cases():
    # gamma > 0 with |alpha| > gamma approaches its supremum as t grows
    for a, g in [(3, 1), (-3, 1), (5, 2)]:
        s = ghat_sup(a, g)
        assert s.is_finite
        scan = numeric_ghat_max(a, g, t_hi=1e8)
        # float rounding in ghat_eval can push the scan a hair above the sup
        assert scan < s.value + 1e-5
        assert s.value - scan < 1e-4
    # gamma = 0 is unbounded
    s = ghat_sup(2, 0)
    assert not s.is_finite
    assert ghat_eval(2, 0, 1e6) > 1e6


def test_tau_defining_equation():
    with mp.workdps(45):
        t = tau(40)
        assert abs(mp.log(t) - 1 - 1 / t) < mp.mpf(10) ** -38
    assert tau_str(12).startswith("3.5911214766")


def test_solve_y_defining_equation():
    assert solve_y(1.0) == 1.0
    for x in [1.5, 2.0, 5.0, 10.0, 50.0]:
        y = solve_y(x)
        res = (x * math.log(y) - x * math.log(x)
               - (x - 1) * math.log(y + 1) + (x - 1) * math.log(x - 1))
        assert abs(res) < 1e-10
        lo, hi = y_bounds(x)
        assert lo < y < hi


def test_y_asymptote_accuracy_grows_with_x():
    errs = [abs(solve_y(x) - y_asymptote(x)) for x in [10.0, 100.0, 1000.0]]
    assert errs[0] < 1e-2
    assert errs[1] < 1e-4
    assert errs[2] < 1e-6
    assert errs[0] > errs[1] > errs[2]


def test_solve_y_reference_point():
    # y(2) solves 2 log y = log(y + 1), so y**2 = y + 1 scaled: actually
    # 2 log y - 2 log 2 - log(y + 1) = 0, i.e. y**2 = 4 (y + 1)
    y = solve_y(2.0)
    assert abs(y * y - 4 * (y + 1)) < 1e-8
    assert abs(y - (2 + 2 * math.sqrt(2))) < 1e-10
