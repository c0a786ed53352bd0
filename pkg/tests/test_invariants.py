"""Structural constants and the limit prefactor."""

from fractions import Fraction

import pytest

from hypconv import PfqSpec, from_pfq
from hypconv.core_arith import GaussianRational
from hypconv.invariants import (
    h0_value,
    h0_value_all_unit,
    structural_constants,
)

F = Fraction


def gauss(a, b, c, alpha, gamma, argument=1):
    return from_pfq(PfqSpec.of(
        upper=[((a, 0), alpha), ((b, 0), 0)],
        lower=[((c, 0), gamma)],
        argument=(argument, 0)))


def reference_term():
    # 2F1(1/2 + n, 1/3; 2 + 2n; 1)
    return gauss(F(1, 2), F(1, 3), F(2), 1, 2)


def test_reference_constants():
    c = structural_constants(reference_term())
    assert c.D0 == 0
    assert c.D0_star == 0
    assert c.D1 == 0
    assert c.D1_star == -1
    assert c.z0 == GaussianRational.of(1)
    assert c.z1 == GaussianRational.of(F(1, 2))
    assert c.z_inf == GaussianRational.of(F(1, 2))
    assert c.zeta0 == GaussianRational.of(1)
    assert c.zeta1 == GaussianRational.of(4)
    assert c.A0 == GaussianRational.of(F(-7, 6))
    assert c.A_inf_star == GaussianRational.of(0)
    assert c.A0_star == GaussianRational.of(F(1, 3))
    assert c.A1_star == GaussianRational.of(F(1, 3))
    assert c.A1 == GaussianRational.of(F(5, 6))
    assert c.Q == (GaussianRational.of(1),)


def test_gauss_family_closed_forms():
    # for 2F1(a + alpha n, b; c + gamma n; 1): D0 = D1 = D0* = 0,
    # D1* = alpha - gamma, z0 = zeta0 = 1, z1 = alpha/gamma, A0 = a + b - c,
    # A_inf* = 0
    for alpha, gamma in [(1, 2), (-1, 2), (2, 2), (-2, -2), (3, 1), (-3, 2)]:
        a, b, c = F(1, 3), F(-1, 2), F(9, 4)
        s = structural_constants(gauss(a, b, c, alpha, gamma))
        assert s.D0 == 0 and s.D1 == 0 and s.D0_star == 0
        assert s.D1_star == alpha - gamma
        assert s.z0 == GaussianRational.of(1)
        assert s.zeta0 == GaussianRational.of(1)
        assert s.z1 == GaussianRational.of(F(alpha, gamma))
        assert s.A0 == GaussianRational.of(a + b - c)
        assert s.A_inf_star == GaussianRational.of(0)


def test_conjugation_symmetry():
    # A1 - A1* = (D1 - D1*)/2 for the Gauss family
    for alpha, gamma in [(1, 2), (2, 2), (-1, 1), (-2, -2)]:
        s = structural_constants(gauss(F(1, 5), F(-2, 3), F(7, 4),
                                       alpha, gamma))
        lhs = s.A1 - s.A1_star
        rhs = GaussianRational.of(F(s.D1 - s.D1_star, 2))
        assert lhs == rhs


def test_omega_set():
    s = structural_constants(gauss(F(1, 2), F(-13, 4), F(5, 4), -2, -2))
    positive = s.omega_positive()
    assert [rho for rho, _, _, _ in positive] == [F(1, 2)]


def test_h0_reference_is_one():
    c = structural_constants(reference_term())
    assert complex(h0_value(c.h0)) == pytest.approx(1.0 + 0j, abs=1e-25)


def test_h0_well_poised_is_one():
    a, b = F(1, 3), F(-2, 3)
    term = gauss(a, b, 1 + a - b, 2, 2, argument=-1)
    c = structural_constants(term)
    assert complex(h0_value(c.h0)) == pytest.approx(1.0 + 0j, abs=1e-20)


def test_h0_all_unit_path_agrees():
    # when every n-multiplier is 1 in magnitude the reflection-free
    # alternative evaluation must agree with the general one
    a, b = F(-1, 2), F(1, 4)
    term = from_pfq(PfqSpec.of(
        upper=[((a, 0), 0), ((b, 0), -1)],
        lower=[((1 + a - b, 0), 1)],
        argument=(-1, 0)))
    c = structural_constants(term)
    general = complex(h0_value(c.h0))
    alt = h0_value_all_unit(c.h0)
    assert alt is not None
    assert complex(alt) == pytest.approx(general, rel=1e-20)


def test_h0_all_unit_declines_other_multipliers():
    c = structural_constants(reference_term())
    assert h0_value_all_unit(c.h0) is None
