"""Numeric oracle: term evaluation, suprema, extrapolated limits."""

import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest

from hypconv.oracle import (
    empirical_verdict,
    limit_value_numeric,
    pochhammer_asymptotic_error,
    stirling_relative_error,
    sup_scan,
    term_log,
    term_logabs_array,
    term_value,
    termwise_limit,
    theta,
    theta_series_coeff,
)
from hypconv.term_model import BivarPoly, PochhammerFactor, ProperTerm, validate

from corpus import (
    divergent_terms,
    gauss_limit,
    gauss_term,
    well_poised_plus,
)

F = Fraction


def test_term_value_against_mpmath_pochhammer():
    term = gauss_term(F(1, 3), F(-3, 2), F(7, 3), 1, 2)
    for n, k in [(0, 0), (1, 0), (0, 1), (3, 2), (7, 5), (20, 11)]:
        got = term_value(term, n, k)
        want = complex(term_value(term, n, k, dps=40))
        assert got == pytest.approx(want, rel=1e-10, abs=1e-300)


def test_negative_shift_reflection():
    # (b)_{-M} = (-1)**M / (1 - b)_M, checked through a falling factor
    term = validate(ProperTerm.of(
        BivarPoly.constant(1), F(1), F(1),
        [PochhammerFactor.of(F(-1), -2, -1)]))
    for n, k in [(1, 0), (2, 3), (5, 1)]:
        m = 2 * n + k
        want = (-1) ** m / float(mp.rf(2, m)) / math.factorial(k)
        assert term_value(term, n, k) == pytest.approx(want, rel=1e-12)


def test_term_logabs_array_matches_scalar():
    term = gauss_term(F(1, 3), F(-3, 2), F(7, 3), -2, 2)
    ns = np.array([0, 1, 5, 40, 300])
    logs = term_logabs_array(term, ns, 6)
    for i, n in enumerate(ns):
        assert logs[i] == pytest.approx(term_log(term, int(n), 6).real,
                                        rel=1e-12)


def test_sup_scan_matches_brute_force():
    term = gauss_term(F(1, 2), F(-13, 4), F(5, 4), 1, 2)
    for k in [0, 3, 17]:
        brute = term_logabs_array(term, np.arange(0, 2001), k)
        want = float(np.max(brute))
        got, argn = sup_scan(term, k, n_max=2000)
        assert got == pytest.approx(want, abs=1e-9)
        assert brute[argn] == pytest.approx(want, abs=1e-9)


def test_termwise_limit_against_large_n():
    term = gauss_term(F(1, 3), F(-3, 2), F(7, 3), 1, 2)
    for k in [0, 1, 4, 9]:
        value, err = termwise_limit(term, k)
        direct = complex(term_value(term, 10 ** 8, k, dps=60))
        assert abs(value - direct) < max(10 * err, 1e-6, 1e-6 * abs(direct))


def test_limit_value_numeric_gauss():
    a, b, c = F(1, 3), F(-3, 2), F(7, 3)
    term = gauss_term(a, b, c, 1, 2)
    want = gauss_limit(a, b, c, 1, 2)
    assert abs(limit_value_numeric(term) - want) < 1e-6


def test_limit_value_numeric_slow_tail():
    # the well-poised family has a power-law tail that needs acceleration
    term = well_poised_plus(F(1, 3), F(-1, 3))
    assert abs(limit_value_numeric(term) - 2 ** (1 / 3)) < 1e-6


def test_empirical_verdict_converges():
    term = gauss_term(F(1, 3), F(-3, 2), F(7, 3), 1, 2)
    report = empirical_verdict(term, k_max=400)
    assert report.classification == "converges"


def test_empirical_verdict_diverges_fast_cases():
    for term in divergent_terms()[:3]:
        report = empirical_verdict(term, k_max=400)
        assert report.classification == "diverges"


def test_theta_kernel():
    for x in [-0.5, -1e-4, 1e-5, 0.3, 2.0, 50.0]:
        want = (1 + x) / x * math.log1p(x) - 1
        assert theta(x) == pytest.approx(want, rel=1e-12)
    assert theta(0.0) == 0.0
    with pytest.raises(ValueError):
        theta(-1.0)
    # the Taylor coefficients reproduce the kernel to high order
    x = 1e-2
    partial = sum(float(theta_series_coeff(j)) * x ** j for j in range(1, 7))
    assert abs(theta(x) - partial) < 10 * x ** 7


def test_stirling_and_pochhammer_validators():
    # both asymptotic forms tighten with m and are already below one percent
    for m in [200, 400]:
        assert stirling_relative_error(m) < 0.01
    assert stirling_relative_error(400) < stirling_relative_error(200)
    for b in [0.5 + 0j, 1.25 - 0.5j]:
        e200 = pochhammer_asymptotic_error(b, 200)
        e400 = pochhammer_asymptotic_error(b, 400)
        assert e200 < 0.01
        assert e400 < e200
