"""First nonzero Taylor coefficient of the curvature correction series.

Each touching point of the landscape function with 1 comes with a rational
function Phi(x) = sum over active factors of alpha**2 x / (alpha x + c),
where c = alpha*t + beta at a finite shear point t, c = beta for the k-heavy
boundary and the roles of alpha and beta swap for the n-heavy boundary.
Its Taylor coefficients have the closed form
v_m = (-1)**(m-1) sum alpha**(m+1) / c**m, and if the first p of them vanish
(p = number of active factors) the whole series is identically zero, since
Phi is x times a rational function of numerator degree below p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .core_arith import (
    AlgebraicReal,
    PolyQ,
    as_fraction,
    point_to_float,
    sign_at,
    vanishes_at,
)
from .term_model import ProperTerm


@dataclass(frozen=True)
class PhiExpansion:
    """Leading behavior of Phi(x) = v_m x**m + O(x**(m+1)) at x = 0."""

    at: str
    identically_zero: bool
    m: Optional[int] = None
    m_parity: Optional[str] = None
    v_m: Optional[Fraction] = None  # exact value when the point is rational
    v_m_sign: Optional[int] = None
    v_m_float: Optional[float] = None


def _expansion_rational(tag: str, pairs) -> PhiExpansion:
    """pairs: (alpha, c) with alpha, c rational, c != 0."""
    pairs = [(as_fraction(a), as_fraction(c)) for a, c in pairs]
    bound = len(pairs)
    for m in range(1, bound + 1):
        v = Fraction((-1) ** (m - 1)) * sum(
            (a ** (m + 1)) / (c ** m) for a, c in pairs)
        if v != 0:
            return PhiExpansion(
                at=tag, identically_zero=False, m=m,
                m_parity="odd" if m % 2 else "even",
                v_m=v, v_m_sign=1 if v > 0 else -1, v_m_float=float(v),
            )
    return PhiExpansion(at=tag, identically_zero=True)


def _expansion_algebraic(tag: str, pairs, t: AlgebraicReal) -> PhiExpansion:
    """pairs: (alpha, beta) integers with alpha != 0; the denominators are
    the linear forms alpha*t + beta evaluated at the algebraic point."""
    bound = len(pairs)
    linears = [PolyQ.linear(Fraction(b), Fraction(a)) for a, b in pairs]
    den_signs = [sign_at(lin, t) for lin in linears]
    assert all(s != 0 for s in den_signs), "inactive factor not filtered"
    for m in range(1, bound + 1):
        # numerator of sum alpha**(m+1) / (alpha t + beta)**m over the
        # common denominator prod (alpha t + beta)**m
        num = PolyQ.constant(0)
        for j, (a, b) in enumerate(pairs):
            part = PolyQ.constant(Fraction(a ** (m + 1)))
            for i, lin in enumerate(linears):
                if i == j:
                    continue
                for _ in range(m):
                    part = part * lin
            num = num + part
        if vanishes_at(num, t):
            continue
        den_sign = 1
        for s in den_signs:
            den_sign *= s ** m
        sign = (-1) ** (m - 1) * sign_at(num, t) * den_sign
        tf = point_to_float(t)
        vf = float((-1) ** (m - 1)) * sum(
            float(a) ** (m + 1) / (float(a) * tf + float(b)) ** m
            for a, b in pairs)
        return PhiExpansion(
            at=tag, identically_zero=False, m=m,
            m_parity="odd" if m % 2 else "even",
            v_m=None, v_m_sign=sign, v_m_float=vf,
        )
    return PhiExpansion(at=tag, identically_zero=True)


def phi_coefficients(term: ProperTerm, at, count: int):
    """First ``count`` Taylor coefficients of Phi at a rational point.

    Returns exact Fractions (zeros included), so callers can cross-check the
    closed form against a numeric expansion of the underlying kernel sum.
    ``at`` accepts the same tags as :func:`phi_expansion` except genuinely
    irrational points.
    """
    pairs = _rational_pairs(term, at)
    return tuple(
        Fraction((-1) ** (m - 1)) * sum(
            (a ** (m + 1)) / (c ** m) for a, c in pairs)
        for m in range(1, count + 1))


def _rational_pairs(term: ProperTerm, at):
    fs = term.factors
    if at == "zero":
        return [(Fraction(f.alpha), Fraction(f.beta)) for f in fs
                if f.alpha != 0 and f.beta != 0]
    if at == "infinity":
        return [(Fraction(f.beta), Fraction(f.alpha)) for f in fs
                if f.alpha != 0 and f.beta != 0]
    t = as_fraction(at)
    if t <= 0:
        raise ValueError("shear point must be positive")
    pairs = []
    for f in fs:
        if f.alpha == 0:
            continue
        c = Fraction(f.alpha) * t + f.beta
        if c != 0:
            pairs.append((Fraction(f.alpha), c))
    return pairs


def phi_expansion(term: ProperTerm, at) -> PhiExpansion:
    """Leading Taylor data of the curvature series.

    ``at`` is "zero" for the k-heavy boundary, "infinity" for the n-heavy
    boundary, or a positive rational / algebraic shear point.
    """
    fs = term.factors
    if at == "zero":
        pairs = [(f.alpha, f.beta) for f in fs if f.alpha != 0 and f.beta != 0]
        return _expansion_rational("zero", pairs)
    if at == "infinity":
        pairs = [(f.beta, f.alpha) for f in fs if f.alpha != 0 and f.beta != 0]
        return _expansion_rational("infinity", pairs)
    if isinstance(at, AlgebraicReal) and at.as_rational() is not None:
        at = at.as_rational()
    if isinstance(at, (int, Fraction)):
        t = as_fraction(at)
        if t <= 0:
            raise ValueError("shear point must be positive")
        pairs = []
        for f in fs:
            if f.alpha == 0:
                continue
            c = Fraction(f.alpha) * t + f.beta
            if c == 0:
                continue  # the factor drops out of the series at this point
            pairs.append((Fraction(f.alpha), c))
        return _expansion_rational(f"t={t}", pairs)
    # genuinely irrational algebraic point: alpha*t + beta never vanishes
    pairs = [(f.alpha, f.beta) for f in fs if f.alpha != 0]
    return _expansion_algebraic(f"t~{at.to_float():.9g}", pairs, at)
