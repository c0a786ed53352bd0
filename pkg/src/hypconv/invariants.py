"""Structural constants of a proper term.

Everything here is an exact rational or Gaussian-rational quantity derived
from the shift multipliers, the factor bases and the polynomial part: the
balance exponents of the two summation directions, the boundary exponents,
the multiplicative constants governing the geometric parts, the set of
shear points where factor shifts can vanish, and the closed-form constant
entering termwise limits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath as mp

from .core_arith import Fraction, GaussianRational, QQ_ONE, QQ_ZERO
from .term_model import ProperTerm


def _half(x: int) -> Fraction:
    return Fraction(x, 2)


@dataclass(frozen=True)
class H0Entry:
    """One factor's contribution to the limit constant."""

    abs_alpha: int
    b: GaussianRational
    alpha_negative: bool  # True selects the reflected gamma in the numerator


@dataclass(frozen=True)
class H0Expr:
    """Symbolic form of the limit constant: a power of 2*pi times per-factor
    gamma data.  Factors with a negatively shifted n-direction carry an extra
    sine denominator which is folded away by the reflection formula at
    evaluation time, so integer bases on that side stay finite."""

    two_pi_exponent: Fraction
    entries: tuple


@dataclass(frozen=True)
class StructuralConstants:
    # balance exponents
    D0: Fraction
    D0_star: Fraction
    D1: Fraction
    D1_star: Fraction
    # boundary exponents
    A0: GaussianRational
    A0_star: GaussianRational
    A1: GaussianRational
    A1_star: GaussianRational
    A_inf_star: GaussianRational
    # multiplicative constants
    z0: GaussianRational
    z1: GaussianRational
    z_inf: GaussianRational
    zeta0: GaussianRational
    zeta1: GaussianRational
    # shear points -beta/alpha with their grouped multiplier sums
    omega: tuple  # of (Fraction rho, int sum_alpha, int sum_beta, tuple idx)
    # leading coefficient of P in n, as an ascending tuple of coefficients in k
    Q: tuple
    h0: H0Expr

    def omega_positive(self):
        return [entry for entry in self.omega if entry[0] > 0]

    @property
    def deg_k_Q(self) -> int:
        return len(self.Q) - 1 if self.Q else -1

    def Q_at(self, k) -> GaussianRational:
        acc = QQ_ZERO
        kq = GaussianRational.of(k)
        for c in reversed(self.Q):
            acc = acc * kq + c
        return acc


def _a_hat(f) -> GaussianRational:
    """b + (beta - 1)/2, defined for beta != 0."""
    return f.b + GaussianRational(_half(f.beta - 1))


def _a_tilde(f) -> GaussianRational:
    """b + (alpha - 1)/2, defined for alpha != 0."""
    return f.b + GaussianRational(_half(f.alpha - 1))


def _int_pow(base: int, exp: int) -> Fraction:
    """base**exp as an exact rational, with 0**0 = 1."""
    if exp == 0:
        return Fraction(1)
    if base == 0:
        raise ZeroDivisionError("0 to a nonzero power")
    if exp > 0:
        return Fraction(base ** exp)
    return Fraction(1, base ** (-exp))


def structural_constants(term: ProperTerm) -> StructuralConstants:
    fs = term.factors
    P = term.P

    D0 = Fraction(-1) + sum(f.beta for f in fs)
    D0s = Fraction(sum(f.alpha for f in fs))
    D1 = Fraction(sum(f.beta for f in fs if f.alpha != 0))
    D1s = Fraction(sum(f.alpha for f in fs if f.beta != 0))

    sum_ahat = sum((_a_hat(f) for f in fs if f.beta != 0), QQ_ZERO)
    sum_ahat_a0 = sum((_a_hat(f) for f in fs if f.beta != 0 and f.alpha == 0),
                      QQ_ZERO)
    sum_atilde = sum((_a_tilde(f) for f in fs if f.alpha != 0), QQ_ZERO)
    sum_atilde_b0 = sum((_a_tilde(f) for f in fs if f.alpha != 0 and f.beta == 0),
                        QQ_ZERO)

    Q = P.leading_in_n()
    deg_k_Q = len(Q) - 1 if Q else -1

    A0 = sum_ahat + GaussianRational.of(P.deg_k)
    A_inf_star = sum_atilde + GaussianRational.of(P.deg_n)
    A0s = sum_ahat_a0 + GaussianRational.of(deg_k_Q)
    A1 = sum_ahat + sum_atilde_b0 + GaussianRational.of(P.deg_total)
    A1s = sum_ahat_a0 + sum_atilde + GaussianRational.of(P.deg_total)

    z0 = term.theta
    z1 = term.theta
    z_inf = term.theta
    zeta0 = term.xi
    zeta1 = term.xi
    for f in fs:
        bb = GaussianRational(_int_pow(f.beta, f.beta)) if f.beta != 0 else QQ_ONE
        z0 = z0 * bb
        if f.alpha != 0:
            ab = GaussianRational(_int_pow(f.alpha, f.beta))
            z1 = z1 * ab
            z_inf = z_inf * ab
        else:
            z1 = z1 * bb
        aa = GaussianRational(_int_pow(f.alpha, f.alpha)) if f.alpha != 0 else QQ_ONE
        zeta0 = zeta0 * aa
        if f.beta != 0:
            zeta1 = zeta1 * GaussianRational(_int_pow(f.beta, f.alpha))
        else:
            zeta1 = zeta1 * aa

    groups = {}
    for idx, f in enumerate(fs):
        if f.alpha == 0:
            continue
        rho = Fraction(-f.beta, f.alpha)
        entry = groups.setdefault(rho, [0, 0, []])
        entry[0] += f.alpha
        entry[1] += f.beta
        entry[2].append(idx)
    omega = tuple(
        (rho, groups[rho][0], groups[rho][1], tuple(groups[rho][2]))
        for rho in sorted(groups)
    )

    two_pi_exp = sum((Fraction(1 - f.alpha, 2) for f in fs if f.alpha != 0),
                     Fraction(0))
    entries = tuple(
        H0Entry(abs(f.alpha), f.b, f.alpha < 0) for f in fs if f.alpha != 0
    )
    h0 = H0Expr(two_pi_exponent=two_pi_exp, entries=entries)

    return StructuralConstants(
        D0=D0, D0_star=D0s, D1=D1, D1_star=D1s,
        A0=A0, A0_star=A0s, A1=A1, A1_star=A1s, A_inf_star=A_inf_star,
        z0=z0, z1=z1, z_inf=z_inf, zeta0=zeta0, zeta1=zeta1,
        omega=omega, Q=Q, h0=h0,
    )


class H0EvaluationError(ArithmeticError):
    """A gamma factor of the limit constant is at a pole."""


def h0_value(expr: H0Expr, dps: int = 30) -> complex:
    """Numeric value of the limit constant.

    For factors with a negative n-multiplier the sine denominator is folded
    with the gamma via the reflection formula, contributing
    |alpha|**(b-1/2) * Gamma(1-b) / (2*pi); the others contribute
    |alpha|**(b-1/2) / Gamma(b).
    """
    with mp.workdps(dps):
        two_pi = 2 * mp.pi
        acc = mp.power(two_pi, mp.mpf(expr.two_pi_exponent.numerator)
                       / expr.two_pi_exponent.denominator) \
            if expr.two_pi_exponent else mp.mpf(1)
        for e in expr.entries:
            b = mp.mpc(mp.mpf(e.b.re.numerator) / e.b.re.denominator,
                       mp.mpf(e.b.im.numerator) / e.b.im.denominator)
            power = mp.power(e.abs_alpha, b - mp.mpf(1) / 2)
            if e.alpha_negative:
                arg = 1 - b
                if mp.im(arg) == 0 and mp.re(arg) == mp.floor(mp.re(arg)) \
                        and mp.re(arg) <= 0:
                    raise H0EvaluationError(f"gamma pole at 1 - b = {arg}")
                acc *= power * mp.gamma(arg) / two_pi
            else:
                if mp.im(b) == 0 and mp.re(b) == mp.floor(mp.re(b)) \
                        and mp.re(b) <= 0:
                    raise H0EvaluationError(f"gamma pole at b = {b}")
                acc *= power / mp.gamma(b)
        return complex(acc)


def h0_value_all_unit(expr: H0Expr, dps: int = 30) -> Optional[complex]:
    """Alternative closed form valid when every n-multiplier is +-1:
    the product of Gamma(1-b) over negative multipliers divided by the
    product of Gamma(b) over positive ones.  Returns None when the
    precondition fails."""
    if any(e.abs_alpha != 1 for e in expr.entries):
        return None
    with mp.workdps(dps):
        acc = mp.mpf(1)
        for e in expr.entries:
            b = mp.mpc(mp.mpf(e.b.re.numerator) / e.b.re.denominator,
                       mp.mpf(e.b.im.numerator) / e.b.im.denominator)
            if e.alpha_negative:
                acc *= mp.gamma(1 - b)
            else:
                acc /= mp.gamma(b)
        return complex(acc)
