"""Decision procedure: verdicts, diagnostics, and limit evaluation."""

import json
import math
from fractions import Fraction

import pytest

from hypconv.decision import (
    LimitClassificationError,
    Verdict,
    decide,
    limit_series,
)
from hypconv.term_model import BivarPoly, PochhammerFactor, ProperTerm, validate

from corpus import (
    GAUSS_PARAMS,
    GAUSS_SHIFTS,
    gauss_expected,
    gauss_limit,
    gauss_term,
    well_poised_lower,
    well_poised_plus,
)

F = Fraction


def test_gauss_law_sample():
    # a slice of the dressed Gauss family against the sign law
    for a, b, c in GAUSS_PARAMS[:3]:
        for alpha in GAUSS_SHIFTS:
            for gamma in GAUSS_SHIFTS:
                term = gauss_term(a, b, c, alpha, gamma)
                want = gauss_expected(a, b, c, alpha, gamma)
                assert decide(term).uniform == want, (a, b, c, alpha, gamma)


def test_condition_diagnostics_on_rejection():
    # |alpha| > gamma > 0 trips the n-heavy boundary refinement
    term = gauss_term(F(1, 3), F(1, 2), F(5, 4), 2, 1)
    v = decide(term)
    assert not v.uniform
    assert v.condition("i").holds()
    failed = [c for c in v.conditions if c.applicable and not c.satisfied]
    assert failed
    assert all(c.witnesses for c in failed)


def test_strictly_contracting_short_circuit():
    # without a rising k-factor the built-in factorial denominator wins for
    # any ratio, and the landscape conditions are skipped entirely
    term = validate(ProperTerm.of(BivarPoly.constant(1), F(1), F(2), []))
    v = decide(term)
    assert v.uniform
    assert not v.condition("ii").applicable
    for cid in ("iv", "v", "vi", "vii"):
        assert not v.condition(cid).applicable


def test_factorial_divergence_short_circuit():
    # two rising k-factors against one factorial: condition (i) fails and
    # the landscape conditions are never reached
    term = validate(ProperTerm.of(
        BivarPoly.constant(1), F(1), F(1),
        [PochhammerFactor.of(F(1, 2), 0, 1),
         PochhammerFactor.of(F(1, 3), 0, 1)]))
    v = decide(term)
    assert not v.uniform
    assert v.condition("i").applicable and not v.condition("i").satisfied
    for cid in ("ii", "iv", "v", "vi", "vii"):
        assert not v.condition(cid).applicable


def test_geometric_ratio_trips_tight_balance():
    # theta = 2 against one rising factor: |z0| = 2 fails condition (ii)
    term = validate(ProperTerm.of(
        BivarPoly.constant(1), F(1), F(2),
        [PochhammerFactor.of(F(1, 2), 0, 1)]))
    v = decide(term)
    assert not v.uniform
    assert v.condition("ii").applicable and not v.condition("ii").satisfied
    for cid in ("iv", "v"):
        assert not v.condition(cid).applicable


def test_rejects_all_divergent_corpus_terms():
    from corpus import divergent_terms

    for term in divergent_terms():
        assert not decide(term).uniform


def test_verdict_json_round_trip():
    terms = [
        gauss_term(F(1, 3), F(-3, 2), F(7, 3), -2, 2),
        gauss_term(F(1, 3), F(1, 2), F(5, 4), 2, 1),
        well_poised_plus(F(1, 3), F(-1, 3)),
    ]
    for term in terms:
        v = decide(term)
        blob = json.dumps(v.to_dict())
        assert Verdict.from_dict(json.loads(blob)) == v


def test_human_lines_shape():
    v = decide(gauss_term(F(1, 3), F(-3, 2), F(7, 3), -2, 2))
    lines = v.human_lines()
    assert lines[0].endswith("YES" if v.uniform else "NO")
    assert sum("condition (" in ln for ln in lines) == 7


def test_limit_gauss_closed_form():
    # |alpha| < gamma: the limit is (1 - alpha/gamma) ** -b
    a, b, c = F(1, 3), F(-3, 2), F(7, 3)
    for alpha, gamma in [(1, 2), (-1, 3), (2, 3)]:
        term = gauss_term(a, b, c, alpha, gamma)
        assert decide(term).uniform
        lim = limit_series(term)
        want = gauss_limit(a, b, c, alpha, gamma)
        assert abs(lim.value - want) < 1e-9, (alpha, gamma)


def test_limit_well_poised_series():
    term = well_poised_plus(F(1, 3), F(-1, 3))
    lim = limit_series(term)
    assert lim.kind == "series"
    assert abs(lim.value - 2 ** (1 / 3)) < 1e-9


def test_limit_vanishes_for_alternating_lower_shift():
    term = well_poised_lower(F(-1, 2), F(1, 4))
    assert decide(term).uniform
    lim = limit_series(term)
    assert abs(lim.value) < 1e-8


def test_limit_unclassifiable_when_balance_breaks():
    # an expanding n-direction with limit ratio -1 settles nowhere
    term = validate(ProperTerm.of(
        BivarPoly.constant(1), F(2), F(1, 3),
        [PochhammerFactor.of(F(1, 2), 1, 0),
         PochhammerFactor.of(F(3, 4), -1, 0)]))
    with pytest.raises(LimitClassificationError):
        limit_series(term)


def test_alpha_equals_gamma_constant_landscape_path():
    # alpha = gamma < 0 exercises the identically-one landscape analysis
    a, b, c = F(1, 2), F(-13, 4), F(5, 4)
    accept = gauss_term(a, b, c, -2, -2)
    v = decide(accept)
    assert v.uniform == (b < -abs(c - a))
    assert any("constant" in n for n in v.notes)
    reject = gauss_term(a, F(-1, 4), c, -2, -2)
    assert not decide(reject).uniform
