"""The landscape function and its exact critical-point analysis.

g(t) = |theta| |xi|**t prod_j |beta_j + alpha_j t| ** (beta_j + alpha_j t)
controls whether sup_n |u(n, k)| stays summable: uniform dominated
convergence requires g <= 1 on the positive axis, with extra boundary
checks wherever g touches 1.  At rational t an even integer power of g is
an exact rational, and the stationary points are roots of an explicit
integer polynomial, so the whole analysis is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import mpmath as mp

from .core_arith import (
    AlgebraicReal,
    PolyQ,
    as_fraction,
    equals_rational,
    isolate_real_roots,
    point_to_float,
    sign_at,
    vanishes_at,
)
from .invariants import StructuralConstants, structural_constants
from .term_model import ProperTerm


def _xlogx(x: float) -> float:
    return 0.0 if x == 0 else x * math.log(abs(x))


def g_eval(term: ProperTerm, t: float) -> float:
    """Floating-point value of the landscape function at t >= 0."""
    acc = 0.5 * math.log(float(term.theta.abs2()))
    acc += t * 0.5 * math.log(float(term.xi.abs2()))
    for f in term.factors:
        acc += _xlogx(f.beta + f.alpha * t)
    return math.exp(acc)


def g_pow_exact(term: ProperTerm, t) -> Fraction:
    """g(t) ** (2 q) as an exact rational, where t = p/q in lowest terms.

    Doubling the exponent clears the absolute values (squares are taken
    instead), and multiplying by q makes every exponent an integer.
    """
    t = as_fraction(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    p, q = t.numerator, t.denominator
    acc = term.theta.abs2() ** q * term.xi.abs2() ** p
    for f in term.factors:
        e = q * f.beta + f.alpha * p
        if e == 0:
            continue
        base = Fraction(f.beta) + Fraction(f.alpha) * t
        acc *= (base * base) ** e
    return acc


@dataclass(frozen=True)
class CriticalPoint:
    """A candidate extremum of the landscape function on (0, infinity)."""

    t: Union[Fraction, AlgebraicReal]
    in_omega: bool
    omega_alpha_sum: int
    g_equals_one: bool
    g_below_one: bool

    def t_float(self) -> float:
        return point_to_float(self.t)


@dataclass(frozen=True)
class CriticalAnalysis:
    g_is_constant: bool
    constant_abs2: Optional[Fraction]  # squared constant value when constant
    points: tuple


def critical_points(term: ProperTerm,
                    constants: Optional[StructuralConstants] = None
                    ) -> CriticalAnalysis:
    """Exact stationary-point analysis of g on (0, infinity).

    Precondition: the n-direction multiplier sum vanishes (the only regime
    in which the analysis is needed); otherwise the logarithmic derivative
    contains a transcendental constant and this reduction does not apply.

    The stationary points away from the shear points are the positive roots
    of |zeta0|**2 * prod (t - rho)**(2 a_rho) = 1 with a_rho the grouped
    multiplier sums; at each root the comparison of g with 1 is decided by
    the sign of the analogous value polynomial built from the grouped beta
    sums.  Shear points themselves are rational and g there is compared
    with 1 through an exact rational power.
    """
    c = constants if constants is not None else structural_constants(term)
    if c.D0_star != 0:
        raise ValueError("critical-point analysis requires a balanced "
                         "n-direction (sum of n-multipliers zero)")
    groups = c.omega
    zeta0_sq = c.zeta0.abs2()
    if all(sa == 0 for _, sa, _, _ in groups):
        if zeta0_sq == 1:
            # the logarithmic derivative vanishes identically: g is constant
            return CriticalAnalysis(True, c.z0.abs2(), ())
        # g is strictly monotone; no stationary points, and no shear point
        # can be a maximum
        points = tuple(_omega_point(term, rho, sa)
                       for rho, sa, _, _ in groups if rho > 0)
        return CriticalAnalysis(False, None, points)

    one = PolyQ.constant(1)
    num = one
    den = one
    num_v = one
    den_v = one
    for rho, sa, sb, _ in groups:
        lin = PolyQ.linear(-rho, 1)
        power = lin
        # build lin**(2|sa|) and lin**(2|sb|) cheaply
        if sa > 0:
            num = num * _poly_pow(lin, 2 * sa)
        elif sa < 0:
            den = den * _poly_pow(lin, -2 * sa)
        if sb > 0:
            num_v = num_v * _poly_pow(lin, 2 * sb)
        elif sb < 0:
            den_v = den_v * _poly_pow(lin, -2 * sb)
    stationary_eq = (num.scale(zeta0_sq) - den).integer_primitive()
    value_poly = num_v.scale(c.z1.abs2()) - den_v

    points = []
    for root in isolate_real_roots(stationary_eq, 0, None):
        if any(rho > 0 and equals_rational(root, rho) for rho, _, _, _ in groups):
            continue  # shear points are handled separately below
        rat = root.as_rational()
        t = rat if rat is not None else root
        if vanishes_at(value_poly, root):
            eq, below = True, False
        else:
            eq, below = False, sign_at(value_poly, root) < 0
        points.append(CriticalPoint(t, False, 0, eq, below))
    for rho, sa, _, _ in groups:
        if rho > 0:
            points.append(_omega_point(term, rho, sa))
    points.sort(key=lambda pt: pt.t_float())
    return CriticalAnalysis(False, None, tuple(points))


def _omega_point(term: ProperTerm, rho: Fraction, sum_alpha: int) -> CriticalPoint:
    gp = g_pow_exact(term, rho)
    return CriticalPoint(rho, True, sum_alpha, gp == 1, gp < 1)


def _poly_pow(p: PolyQ, e: int) -> PolyQ:
    out = PolyQ.constant(1)
    for _ in range(e):
        out = out * p
    return out


# ---------------------------------------------------------------------------
# the two-parameter model landscape and its supremum


def ghat_eval(alpha, gamma, t: float) -> float:
    """|alpha t + 1|**(alpha t + 1) |gamma t|**(gamma t) /
    (|alpha t|**(alpha t) |gamma t + 1|**(gamma t + 1)) for t > 0."""
    a = float(alpha)
    g = float(gamma)
    acc = _xlogx(a * t + 1) + _xlogx(g * t) - _xlogx(a * t) - _xlogx(g * t + 1)
    return math.exp(acc)


@dataclass(frozen=True)
class GhatSup:
    """Supremum of the model landscape over t > 0."""

    case: str
    is_finite: bool
    value: Optional[float]  # None when unbounded
    exact: Optional[Fraction]  # exact rational value when one exists


def ghat_sup(alpha, gamma) -> GhatSup:
    """Closed-form supremum of the model landscape, by case analysis on the
    signs of the two multipliers."""
    a = as_fraction(alpha)
    g = as_fraction(gamma)
    if a == 0 and g == 0:
        raise ValueError("multipliers must not both vanish")
    if a == g:
        return GhatSup("equal", True, 1.0, Fraction(1))
    if g == 0:
        return GhatSup("gamma-zero", False, None, None)
    if g > 0:
        v = max(abs(a / g), Fraction(1))
        return GhatSup("gamma-positive", True, float(v), v)
    # gamma < 0 below
    if a == 0:
        return GhatSup("alpha-zero", True, 2.0, Fraction(2))
    if a < g:
        y = solve_y(float(a / g))
        return GhatSup("alpha-below-gamma", True, y, None)
    if a < 0:  # g < a < 0
        y = solve_y(float(g / (g - a)))
        return GhatSup("between", True, 1.0 + 1.0 / y, None)
    # a > 0 > g
    y = solve_y(float((g - a) / g))
    return GhatSup("opposite", True, 1.0 + y, None)


_TAU_CACHE = {}


def tau(dps: int = 40):
    """The root of log(t) = 1 + 1/t, to dps decimal digits (mpmath mpf)."""
    if dps in _TAU_CACHE:
        return _TAU_CACHE[dps]
    with mp.workdps(dps + 10):
        t = mp.mpf("3.6")
        for _ in range(200):
            delta = (mp.log(t) - 1 - 1 / t) / (1 / t + 1 / t ** 2)
            t -= delta
            if abs(delta) < mp.mpf(10) ** (-(dps + 8)):
                break
        result = +t
    _TAU_CACHE[dps] = result
    return result


def tau_str(digits: int = 40) -> str:
    """Decimal string of tau with the given number of significant digits."""
    return mp.nstr(tau(digits + 10), digits, strip_zeros=False)


def y_bounds(x: float):
    """Bracketing bounds tau*(x-1) + 1 < y(x) < tau*(x-1) + (tau-1)/2,
    valid for x > 1."""
    t = float(tau(25))
    return t * (x - 1) + 1, t * (x - 1) + (t - 1) / 2


def y_asymptote(x: float) -> float:
    """Large-x approximation tau*x - (tau+1)/2 - (tau+1)(tau-2)/(24 tau x)."""
    t = float(tau(25))
    return t * x - (t + 1) / 2 - (t + 1) * (t - 2) / (24 * t * x)


def solve_y(x: float) -> float:
    """The unique root y >= 1 of
    x log y - x log x - (x - 1) log(y + 1) + (x - 1) log(x - 1) = 0
    for x >= 1 (y(1) = 1)."""
    if x < 1:
        raise ValueError("x must be >= 1")
    if x == 1:
        return 1.0

    def psi(y: float) -> float:
        return (x * math.log(y) - x * math.log(x)
                - (x - 1) * math.log(y + 1) + (x - 1) * math.log(x - 1))

    lo, hi = y_bounds(x)
    # the bracket is strict for x > 1 but guard against rounding at the ends
    while psi(lo) > 0:
        lo = 1 + (lo - 1) * 0.99
    while psi(hi) < 0:
        hi = hi * 1.01
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if psi(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
