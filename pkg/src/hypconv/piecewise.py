"""Piecewise-affine exponent bookkeeping.

The growth order of the polynomial part along rays is captured by the upper
envelope of the lines deg_k + p * deg_n over the monomials of P (a Newton
polygon in disguise).  The boundary-exponent functions are that envelope
plus an affine part collected from the Pochhammer factors; their values at
rational points are exact Gaussian rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core_arith import (
    AlgebraicReal,
    GaussianRational,
    QQ_ZERO,
    as_fraction,
    equals_rational,
    vanishes_at,
)
from .invariants import StructuralConstants, _a_hat, _a_tilde
from .term_model import BivarPoly, ProperTerm


@dataclass(frozen=True)
class PiecewiseAffine:
    """A continuous piecewise-affine function with Gaussian-rational slopes
    and intercepts on a rational interval (the upper end may be infinite).

    ``pieces[i]`` applies on [breakpoints[i-1], breakpoints[i]] with the
    convention breakpoints[-1] = domain_lo, breakpoints[len] = domain_hi.
    Real parts of slopes are nondecreasing and adjacent pieces agree at the
    shared breakpoint.
    """

    domain_lo: Fraction
    domain_hi: Optional[Fraction]
    breakpoints: tuple
    pieces: tuple  # of (slope, intercept) GaussianRational pairs

    def __post_init__(self):
        assert len(self.pieces) == len(self.breakpoints) + 1
        for i in range(len(self.breakpoints)):
            x = self.breakpoints[i]
            s1, c1 = self.pieces[i]
            s2, c2 = self.pieces[i + 1]
            assert (s1 * x + c1 - s2 * x - c2).is_zero(), "discontinuous"
        slopes = [s.re for s, _ in self.pieces]
        assert all(a <= b for a, b in zip(slopes, slopes[1:])), \
            "slopes must have nondecreasing real parts"

    def piece_at(self, p: Fraction):
        if p < self.domain_lo or (self.domain_hi is not None and p > self.domain_hi):
            raise ValueError(f"{p} outside domain")
        idx = 0
        while idx < len(self.breakpoints) and p > self.breakpoints[idx]:
            idx += 1
        return self.pieces[idx]

    def value(self, p) -> GaussianRational:
        p = as_fraction(p)
        slope, intercept = self.piece_at(p)
        return slope * GaussianRational(p) + intercept

    def re_value(self, p) -> Fraction:
        return self.value(p).re

    def plus_affine(self, slope, intercept) -> "PiecewiseAffine":
        slope = GaussianRational.of(slope)
        intercept = GaussianRational.of(intercept)
        return PiecewiseAffine(
            self.domain_lo, self.domain_hi, self.breakpoints,
            tuple((s + slope, c + intercept) for s, c in self.pieces),
        )

    def slopes(self):
        return [s for s, _ in self.pieces]


def upper_envelope(lines, lo, hi=None) -> PiecewiseAffine:
    """Upper envelope of affine functions p -> intercept + slope * p on
    [lo, hi].  ``lines`` is an iterable of (slope, intercept) rationals."""
    lo = as_fraction(lo)
    if hi is not None:
        hi = as_fraction(hi)
    best = {}
    for slope, intercept in lines:
        slope = as_fraction(slope)
        intercept = as_fraction(intercept)
        if slope not in best or best[slope] < intercept:
            best[slope] = intercept
    if not best:
        raise ValueError("envelope of no lines")
    ordered = sorted(best.items())
    hull = []  # (slope, intercept, start_x) with start_x where the line takes over
    for slope, intercept in ordered:
        while hull:
            pslope, pintercept, pstart = hull[-1]
            # intersection with current top line
            x = (pintercept - intercept) / (slope - pslope)
            if pstart is not None and x <= pstart:
                hull.pop()
            else:
                hull.append((slope, intercept, x))
                break
        if not hull:
            hull.append((slope, intercept, None))
    # clip to [lo, hi]
    segs = []
    for i, (slope, intercept, start) in enumerate(hull):
        end = hull[i + 1][2] if i + 1 < len(hull) else None
        a = lo if start is None else max(lo, start)
        b = end
        if hi is not None:
            b = hi if b is None else min(b, hi)
        if b is not None and a >= b:
            continue
        segs.append((slope, intercept, a, b))
    if not segs:
        # a single line dominates the whole (degenerate) domain
        slope, intercept = max(
            best.items(), key=lambda si: si[1] + si[0] * lo)
        segs = [(slope, intercept, lo, hi)]
    breakpoints = tuple(seg[2] for seg in segs[1:])
    pieces = tuple(
        (GaussianRational(Fraction(slope)), GaussianRational(Fraction(intercept)))
        for slope, intercept, _, _ in segs
    )
    return PiecewiseAffine(lo, hi, breakpoints, pieces)


def newton_phi(P: BivarPoly, lo=0, hi=None) -> PiecewiseAffine:
    """max over monomials of deg_k + p * deg_n, as a piecewise-affine
    function of p on [lo, hi] (default [0, infinity))."""
    if P.is_zero():
        raise ValueError("phi of the zero polynomial")
    return upper_envelope(((dn, dk) for dn, dk in P.monomials()), lo, hi)


def psi_functions(term: ProperTerm, constants: StructuralConstants):
    """The two boundary-exponent functions: the first on [0, 1] controlling
    the k-heavy regime, the second on [1, infinity) controlling the n-heavy
    regime.  Endpoint values tie to the boundary exponents:
    psi0(0) = A0, psi0(1) = A1, psi_inf(1) = A1*, and for large p psi_inf
    has slope A_inf* above intercept A0*."""
    fs = term.factors
    sum_ahat = sum((_a_hat(f) for f in fs if f.beta != 0), QQ_ZERO)
    sum_ahat_a0 = sum((_a_hat(f) for f in fs if f.beta != 0 and f.alpha == 0),
                      QQ_ZERO)
    sum_atilde = sum((_a_tilde(f) for f in fs if f.alpha != 0), QQ_ZERO)
    sum_atilde_b0 = sum((_a_tilde(f) for f in fs if f.alpha != 0 and f.beta == 0),
                        QQ_ZERO)
    psi0 = newton_phi(term.P, 0, 1).plus_affine(sum_atilde_b0, sum_ahat)
    psi_inf = newton_phi(term.P, 1, None).plus_affine(sum_atilde, sum_ahat_a0)
    return psi0, psi_inf


def sheared_monomials(P: BivarPoly, t):
    """Monomials of P(t*k + n, k) present for the given t (rational or
    algebraic), decided exactly."""
    if isinstance(t, (int, Fraction)):
        return P.sheared_rational(t).monomials()
    monos = []
    for key, (re, im) in P.shear_coefficient_polys().items():
        if vanishes_at(re, t) and vanishes_at(im, t):
            continue
        monos.append(key)
    return monos


def psi_star(term: ProperTerm, constants: StructuralConstants, t) -> PiecewiseAffine:
    """The boundary-exponent function along the shear n -> t*k + n, on [0, 1].

    t may be a positive Fraction or AlgebraicReal.  Factors whose shift
    vanishes identically along the shear move from the constant part into
    the slope; the polynomial envelope is recomputed from the monomials of
    the sheared P that survive at this exact t.
    """
    fs = term.factors
    const = QQ_ZERO
    slope = QQ_ZERO
    for f in fs:
        if f.alpha != 0 and f.beta != 0 and \
                equals_rational(t, Fraction(-f.beta, f.alpha)):
            # the shift alpha*(t*k) + beta*k vanishes along the shear
            slope = slope + _a_hat(f)
            continue
        if f.beta != 0:
            const = const + _a_hat(f) + GaussianRational(Fraction(f.alpha, 2))
        elif f.alpha != 0:
            const = const + _a_tilde(f)
    phi_star = upper_envelope(
        ((dn, dk) for dn, dk in sheared_monomials(term.P, t)), 0, 1)
    return phi_star.plus_affine(slope, const)
