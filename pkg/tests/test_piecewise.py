"""Piecewise-affine envelopes and the exponent functions built on them."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hypconv import PfqSpec, from_pfq
from hypconv.core_arith import AlgebraicReal, GaussianRational, PolyQ
from hypconv.invariants import structural_constants
from hypconv.piecewise import newton_phi, psi_functions, sheared_monomials, upper_envelope
from hypconv.term_model import BivarPoly

F = Fraction

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=6)

lines = st.lists(st.tuples(rationals, rationals), min_size=1, max_size=8)

bivar_polys = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 4)),
    st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(
        lambda c: c != 0),
    min_size=1, max_size=7,
).map(BivarPoly.of)


def gauss(a, b, c, alpha, gamma):
    return from_pfq(PfqSpec.of(
        upper=[((a, 0), alpha), ((b, 0), 0)],
        lower=[((c, 0), gamma)],
        argument=(1, 0)))


@given(lines)
@settings(max_examples=100)
def test_envelope_is_pointwise_max(ls):
    env = upper_envelope(ls, F(0), F(1))
    for p in [F(0), F(1, 7), F(1, 3), F(1, 2), F(2, 3), F(1)]:
        want = max(s * p + i for s, i in ls)
        assert env.re_value(p) == want


@given(lines)
@settings(max_examples=100)
def test_envelope_slopes_nondecreasing(ls):
    env = upper_envelope(ls, F(0), F(1))
    slopes = [s.re for s in env.slopes()]
    assert slopes == sorted(slopes)


@given(bivar_polys)
@settings(max_examples=100)
def test_newton_phi_matches_brute_force(P):
    phi = newton_phi(P, lo=F(0), hi=F(1))
    for p in [F(0), F(1, 5), F(1, 2), F(3, 4), F(1)]:
        brute = max(F(dk) + p * dn for dn, dk in P.monomials())
        assert phi.re_value(p) == brute


def test_psi_endpoint_identities():
    # psi0(0) = A0, psi0(1) = A1 and psi_inf(1) = A1*
    for alpha, gamma in [(1, 2), (2, 2), (-2, -2), (-1, 3)]:
        term = gauss(F(1, 3), F(-1, 2), F(9, 4), alpha, gamma)
        c = structural_constants(term)
        psi0, psi_inf = psi_functions(term, c)
        assert psi0.value(F(0)) == c.A0
        assert psi0.value(F(1)) == c.A1
        assert psi_inf.value(F(1)) == c.A1_star


def test_psi_functions_domains():
    term = gauss(F(1, 2), F(-13, 4), F(5, 4), -2, -2)
    c = structural_constants(term)
    psi0, psi_inf = psi_functions(term, c)
    assert (psi0.domain_lo, psi0.domain_hi) == (F(0), F(1))
    assert psi_inf.domain_lo == F(1) and psi_inf.domain_hi is None


def sheared_phi(P, t):
    return upper_envelope(((dn, dk) for dn, dk in sheared_monomials(P, t)),
                          F(0), F(1))


@given(bivar_polys, st.fractions(min_value=0, max_value=6,
                                 max_denominator=5).filter(lambda t: t > 0))
@settings(max_examples=100)
def test_sheared_envelope_agrees_at_one(P, t):
    # the shear n -> t*k + n preserves total degree, so the sheared
    # envelope coincides with the plain one at p = 1
    plain = newton_phi(P, lo=F(0), hi=F(1))
    assert sheared_phi(P, t).re_value(F(1)) == plain.re_value(F(1))


def test_sheared_envelope_algebraic_point():
    # same fixed point of the shear at an irrational t (here sqrt 2), with
    # monomial survival decided exactly
    sqrt2 = AlgebraicReal(PolyQ.of([-2, 0, 1]), F(1), F(2))
    for P in [
        BivarPoly.of({(2, 0): F(1), (1, 1): F(-2), (0, 2): F(1), (0, 0): F(3)}),
        BivarPoly.of({(3, 1): F(1, 2), (1, 2): F(5), (2, 0): F(-1)}),
        BivarPoly.of({(0, 0): F(7)}),
    ]:
        plain = newton_phi(P, lo=F(0), hi=F(1))
        assert sheared_phi(P, sqrt2).re_value(F(1)) == plain.re_value(F(1))


def test_sheared_monomials_detect_cancellation():
    # (n - 2k)(n + k) sheared by t = 2 loses its k^2 monomial
    P = BivarPoly.of({(1, 0): F(1), (0, 1): F(-2)}) * \
        BivarPoly.of({(1, 0): F(1), (0, 1): F(1)})
    monos = set(sheared_monomials(P, F(2)))
    assert (0, 2) not in monos
    assert (2, 0) in monos
    # and at t = sqrt 2 nothing cancels
    sqrt2 = AlgebraicReal(PolyQ.of([-2, 0, 1]), F(1), F(2))
    assert (0, 2) in set(sheared_monomials(P, sqrt2))
