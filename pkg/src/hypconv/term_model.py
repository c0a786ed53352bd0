"""Data model for proper bivariate hypergeometric terms.

A term is u(n, k) = P(n, k) * xi**n * theta**k / k! * prod_j (b_j)_{a_j n + b_j k}
with integer shift multipliers per Pochhammer factor, a Gaussian-rational
polynomial P, and Gaussian-rational geometric bases xi, theta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Optional, Sequence, Tuple

from .core_arith import (
    CoreArithError,
    GaussianRational,
    PolyQ,
    QQ_ONE,
    QQ_ZERO,
    as_fraction,
)


class TermValidationError(ValueError):
    """A term violates the admissibility requirements.

    The ``violations`` attribute lists every failed requirement.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class PochhammerFactor:
    """A rising-factorial factor (b)_{alpha*n + beta*k}."""

    b: GaussianRational
    alpha: int
    beta: int

    @staticmethod
    def of(b, alpha: int, beta: int) -> "PochhammerFactor":
        return PochhammerFactor(GaussianRational.of(b), int(alpha), int(beta))

    def shift_at(self, n: int, k: int) -> int:
        return self.alpha * n + self.beta * k

    def __str__(self):
        return f"({self.b})_[{self.alpha}n{self.beta:+d}k]"


@dataclass(frozen=True)
class BivarPoly:
    """A polynomial in (n, k) with Gaussian-rational coefficients.

    Stored as a sorted tuple of ((deg_n, deg_k), coefficient) with all
    coefficients nonzero.
    """

    terms: tuple

    @staticmethod
    def of(mapping) -> "BivarPoly":
        items = []
        acc = {}
        for (dn, dk), c in (mapping.items() if isinstance(mapping, dict) else mapping):
            c = GaussianRational.of(c)
            key = (int(dn), int(dk))
            if key[0] < 0 or key[1] < 0:
                raise CoreArithError("negative exponent in polynomial")
            acc[key] = acc.get(key, QQ_ZERO) + c
        for key in sorted(acc):
            if not acc[key].is_zero():
                items.append((key, acc[key]))
        return BivarPoly(tuple(items))

    @staticmethod
    def constant(c) -> "BivarPoly":
        return BivarPoly.of({(0, 0): c})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, dn: int, dk: int) -> GaussianRational:
        for key, c in self.terms:
            if key == (dn, dk):
                return c
        return QQ_ZERO

    @property
    def deg_n(self) -> int:
        return max((dn for (dn, _), _ in self.terms), default=-1)

    @property
    def deg_k(self) -> int:
        return max((dk for (_, dk), _ in self.terms), default=-1)

    @property
    def deg_total(self) -> int:
        return max((dn + dk for (dn, dk), _ in self.terms), default=-1)

    def monomials(self):
        return [key for key, _ in self.terms]

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        return BivarPoly.of(list(self.terms) + list(other.terms))

    def __neg__(self) -> "BivarPoly":
        return BivarPoly(tuple((key, -c) for key, c in self.terms))

    def __sub__(self, other: "BivarPoly") -> "BivarPoly":
        return self + (-other)

    def __mul__(self, other: "BivarPoly") -> "BivarPoly":
        out = {}
        for (a1, b1), c1 in self.terms:
            for (a2, b2), c2 in other.terms:
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, QQ_ZERO) + c1 * c2
        return BivarPoly.of(out)

    def scaled(self, c) -> "BivarPoly":
        c = GaussianRational.of(c)
        return BivarPoly.of({key: v * c for key, v in self.terms})

    def eval_complex(self, n: complex, k: complex) -> complex:
        return sum(
            c.to_complex() * (n ** dn) * (k ** dk) for (dn, dk), c in self.terms
        )

    def eval_exact(self, n, k) -> GaussianRational:
        n = GaussianRational.of(n)
        k = GaussianRational.of(k)
        acc = QQ_ZERO
        for (dn, dk), c in self.terms:
            acc = acc + c * n ** dn * k ** dk
        return acc

    def shifted(self, dn: int, dk: int) -> "BivarPoly":
        """P(n + dn, k + dk) by binomial expansion."""
        out = {}
        for (a, b), c in self.terms:
            for i in range(a + 1):
                ci = c * (comb(a, i) * dn ** (a - i))
                if ci.is_zero():
                    continue
                for j in range(b + 1):
                    cij = ci * (comb(b, j) * dk ** (b - j))
                    if cij.is_zero():
                        continue
                    key = (i, j)
                    out[key] = out.get(key, QQ_ZERO) + cij
        return BivarPoly.of(out)

    def leading_in_n(self) -> tuple:
        """Coefficient of n**deg_n as a polynomial in k: ascending tuple of
        GaussianRational coefficients."""
        d = self.deg_n
        if d < 0:
            return ()
        top = {dk: c for (dn, dk), c in self.terms if dn == d}
        out = [QQ_ZERO] * (max(top) + 1)
        for dk, c in top.items():
            out[dk] = c
        while out and out[-1].is_zero():
            out.pop()
        return tuple(out)

    def sheared_rational(self, t) -> "BivarPoly":
        """P(t*k + n, k) for rational t, exactly."""
        t = GaussianRational.of(as_fraction(t))
        out = {}
        for (i, j), c in self.terms:
            for m in range(i + 1):
                coeff = c * comb(i, m) * t ** (i - m)
                key = (m, j + i - m)
                out[key] = out.get(key, QQ_ZERO) + coeff
        return BivarPoly.of(out)

    def shear_coefficient_polys(self) -> dict:
        """Coefficients of P(lambda*k + n, k) as polynomials in lambda.

        Returns {(deg_n, deg_k): (PolyQ_re, PolyQ_im)}.
        """
        acc = {}
        for (i, j), c in self.terms:
            for m in range(i + 1):
                key = (m, j + i - m)
                power = i - m
                re, im = acc.setdefault(key, ({}, {}))
                re[power] = re.get(power, Fraction(0)) + comb(i, m) * c.re
                im[power] = im.get(power, Fraction(0)) + comb(i, m) * c.im
        out = {}
        for key, (re, im) in acc.items():
            dmax = max(list(re) + list(im))
            out[key] = (
                PolyQ.of([re.get(d, Fraction(0)) for d in range(dmax + 1)]),
                PolyQ.of([im.get(d, Fraction(0)) for d in range(dmax + 1)]),
            )
        return out

    def leading_form_poly(self) -> tuple:
        """Coefficient of the total-degree leading form along the shear:
        c(lambda) = sum over deg_n+deg_k = deg_total of coeff * lambda**deg_n,
        returned as (PolyQ_re, PolyQ_im)."""
        d = self.deg_total
        re = {}
        im = {}
        for (i, j), c in self.terms:
            if i + j == d:
                re[i] = re.get(i, Fraction(0)) + c.re
                im[i] = im.get(i, Fraction(0)) + c.im
        dmax = max(list(re) + list(im), default=0)
        return (
            PolyQ.of([re.get(t, Fraction(0)) for t in range(dmax + 1)]),
            PolyQ.of([im.get(t, Fraction(0)) for t in range(dmax + 1)]),
        )

    def divide_linear(self, a: int, b: int, ell) -> Optional["BivarPoly"]:
        """Exact division by a*n + b*k + ell, or None if not a factor."""
        ell = GaussianRational.of(ell)
        if a == 0 and b == 0:
            raise CoreArithError("divisor must involve n or k")
        # divide treating the dominant variable's leading coefficient
        quot = {}
        rem = {key: c for key, c in self.terms}

        def lead_key():
            if a != 0:
                return max(rem, key=lambda kk: (kk[0], kk[1]))
            return max(rem, key=lambda kk: (kk[1], kk[0]))

        denom = GaussianRational.of(a if a != 0 else b)
        while rem:
            dn, dk = lead_key()
            if a != 0:
                if dn == 0:
                    return None
                qkey = (dn - 1, dk)
            else:
                if dk == 0:
                    return None
                qkey = (dn, dk - 1)
            c = rem[(dn, dk)] / denom
            quot[qkey] = quot.get(qkey, QQ_ZERO) + c
            for (du, dv), mult in (((1, 0), GaussianRational.of(a)),
                                   ((0, 1), GaussianRational.of(b)),
                                   ((0, 0), ell)):
                if mult.is_zero():
                    continue
                key = (qkey[0] + du, qkey[1] + dv)
                new = rem.get(key, QQ_ZERO) - c * mult
                if new.is_zero():
                    rem.pop(key, None)
                else:
                    rem[key] = new
        return BivarPoly.of(quot)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (dn, dk), c in self.terms:
            mono = "".join(
                s for s, d in (("n", dn), ("k", dk)) for _ in range(0)
            )
            pieces = []
            if dn:
                pieces.append(f"n^{dn}" if dn > 1 else "n")
            if dk:
                pieces.append(f"k^{dk}" if dk > 1 else "k")
            head = "*".join(pieces)
            parts.append(f"({c})" + ("*" + head if head else ""))
        return " + ".join(parts)


BIVAR_ONE = BivarPoly.constant(1)


@dataclass(frozen=True)
class ProperTerm:
    """A proper bivariate hypergeometric term."""

    P: BivarPoly
    xi: GaussianRational
    theta: GaussianRational
    factors: tuple

    @staticmethod
    def of(P, xi, theta, factors) -> "ProperTerm":
        """Build a term, folding constant (alpha, beta) = (0, 0) factors."""
        if isinstance(P, dict):
            P = BivarPoly.of(P)
        kept = []
        for f in factors:
            if not isinstance(f, PochhammerFactor):
                f = PochhammerFactor.of(*f)
            if f.alpha == 0 and f.beta == 0:
                continue  # (b)_0 = 1
            kept.append(f)
        return ProperTerm(
            P=P,
            xi=GaussianRational.of(xi),
            theta=GaussianRational.of(theta),
            factors=tuple(kept),
        )


def validate(term: ProperTerm) -> ProperTerm:
    """Check admissibility; raises TermValidationError listing all problems.

    Requirements: P is not identically zero, xi and theta are nonzero, and
    each factor base avoids the Pochhammer poles reachable from its shift
    direction: nonpositive integers are barred when the shift can grow,
    nonnegative integers when it can shrink, and all integers when the two
    multipliers have opposite signs.
    """
    problems = []
    if term.P.is_zero():
        problems.append("P is identically zero")
    if term.xi.is_zero():
        problems.append("xi must be nonzero")
    if term.theta.is_zero():
        problems.append("theta must be nonzero")
    for idx, f in enumerate(term.factors):
        where = f"factor {idx} {f}"
        if (f.alpha > 0 or f.beta > 0) and f.b.is_nonpositive_integer():
            problems.append(f"{where}: base is a nonpositive integer but the "
                            "shift can grow without bound")
        if (f.alpha < 0 or f.beta < 0) and f.b.is_nonnegative_integer():
            problems.append(f"{where}: base is a nonnegative integer but the "
                            "shift can decrease without bound")
        if f.alpha * f.beta < 0 and f.b.is_integer():
            problems.append(f"{where}: base is an integer but the shift "
                            "multipliers have opposite signs")
    if problems:
        raise TermValidationError(problems)
    return term


# ---------------------------------------------------------------------------
# generalized hypergeometric front-end


@dataclass(frozen=True)
class PfqSpec:
    """A series pFq(b_1 + a_1 n, ..., b_p + a_p n; d_1 + g_1 n, ...; Z)
    where each parameter carries an integer multiple of n."""

    upper: tuple  # of (GaussianRational, int)
    lower: tuple
    argument: GaussianRational

    @staticmethod
    def of(upper, lower, argument) -> "PfqSpec":
        return PfqSpec(
            upper=tuple((GaussianRational.of(b), int(s)) for b, s in upper),
            lower=tuple((GaussianRational.of(d), int(s)) for d, s in lower),
            argument=GaussianRational.of(argument),
        )


def from_pfq(spec: PfqSpec) -> ProperTerm:
    """Rewrite a shifted-parameter pFq summand as a proper term.

    The summand pFq contributes prod (b+an)_k / prod (d+gn)_k * Z^k / k!;
    shifted parameters are turned into ratios of full Pochhammer factors,
    with sign bookkeeping moved into xi and theta.
    """
    factors = []
    xi = QQ_ONE
    theta = spec.argument
    one = QQ_ONE
    for b, a in spec.upper:
        if a == 0:
            factors.append(PochhammerFactor.of(b, 0, 1))
        else:
            factors.append(PochhammerFactor.of(b, a, 1))
            factors.append(PochhammerFactor.of(one - b, -a, 0))
            if a % 2:
                xi = -xi
    for d, g in spec.lower:
        if g == 0:
            factors.append(PochhammerFactor.of(one - d, 0, -1))
            theta = -theta
        else:
            factors.append(PochhammerFactor.of(d, g, 0))
            factors.append(PochhammerFactor.of(one - d, -g, -1))
            if g % 2:
                xi = -xi
            theta = -theta
    return validate(ProperTerm.of(BIVAR_ONE, xi, theta, factors))


# ---------------------------------------------------------------------------
# shift quotients


def _poch_ratio_factors(f: PochhammerFactor, axis: str):
    """Linear factors of (b)_{m + step}/(b)_m along the given axis.

    Returns (numerator_factors, denominator_factors) where each factor is a
    BivarPoly linear in (n, k).
    """
    step = f.alpha if axis == "n" else f.beta
    num, den = [], []
    base = {(1, 0): f.alpha, (0, 1): f.beta}
    if step > 0:
        for i in range(step):
            num.append(BivarPoly.of({**base, (0, 0): f.b + i}))
    elif step < 0:
        for i in range(1, -step + 1):
            den.append(BivarPoly.of({**base, (0, 0): f.b - i}))
    return num, den


def shift_quotient(term: ProperTerm, axis: str):
    """The rational function u(n, k+1)/u(n, k) (axis "k") or
    u(n+1, k)/u(n, k) (axis "n") as a (numerator, denominator) pair of
    bivariate polynomials with common linear factors cancelled."""
    if axis not in ("n", "k"):
        raise ValueError("axis must be 'n' or 'k'")
    num_factors = []
    den_factors = []
    if axis == "k":
        shifted = term.P.shifted(0, 1)
        geom = term.theta
        den_factors.append(BivarPoly.of({(0, 1): 1, (0, 0): 1}))  # k + 1
    else:
        shifted = term.P.shifted(1, 0)
        geom = term.xi
    for f in term.factors:
        fn, fd = _poch_ratio_factors(f, axis)
        num_factors.extend(fn)
        den_factors.extend(fd)
    if shifted.terms == term.P.terms:
        pass  # P cancels
    else:
        num_factors.append(shifted)
        den_factors.append(term.P)
    # cancel syntactically equal factors
    remaining_den = list(den_factors)
    kept_num = []
    for f in num_factors:
        for i, d in enumerate(remaining_den):
            if f.terms == d.terms:
                del remaining_den[i]
                break
        else:
            kept_num.append(f)
    num = BivarPoly.constant(geom)
    for f in kept_num:
        num = num * f
    den = BIVAR_ONE
    for f in remaining_den:
        den = den * f
    return num, den


# ---------------------------------------------------------------------------
# linear-factor absorption (optional normalization pass)


def absorb_linear_factor(term: ProperTerm, a: int, b: int, ell: int) -> ProperTerm:
    """Replace a factor a*n + b*k + ell of P by equivalent Pochhammer data.

    Uses the rising-factorial identity
    (a n + b k + ell) = ell * (ell+1)_{a n + b k} / (ell)_{a n + b k},
    turning the reciprocal into a factor with negated multipliers and
    adjusting xi and theta by the parities of a and b.  Only admissible for
    integer ell >= 2 with a, b >= 0 (not both zero).
    """
    if ell < 2 or a < 0 or b < 0 or (a == 0 and b == 0):
        raise CoreArithError("absorption requires a, b >= 0 and integer ell >= 2")
    quotient = term.P.divide_linear(a, b, GaussianRational.of(ell))
    if quotient is None:
        raise CoreArithError(f"{a}n + {b}k + {ell} does not divide P")
    new_factors = list(term.factors)
    new_factors.append(PochhammerFactor.of(ell + 1, a, b))
    new_factors.append(PochhammerFactor.of(1 - ell, -a, -b))
    xi = -term.xi if a % 2 else term.xi
    theta = -term.theta if b % 2 else term.theta
    return validate(ProperTerm.of(quotient.scaled(ell), xi, theta, new_factors))


def normalize(term: ProperTerm, max_constant: int = 40) -> ProperTerm:
    """Absorb every detectable integer linear factor a*n + b*k + ell of P
    (a, b >= 0, 2 <= ell <= max_constant, gcd(a, b, ell) = 1) into
    Pochhammer factors.  Returns the rewritten term; the verdict of the
    decision procedure is unchanged by this pass."""
    current = term
    changed = True
    while changed:
        changed = False
        P = current.P
        if P.deg_n <= 0 and P.deg_k <= 0:
            break
        # multipliers of a dividing linear factor are bounded by the largest
        # integer coefficient magnitude of P (capped for safety)
        bound = 1
        for (_, _), c in P.terms:
            mag = abs(c.re) + abs(c.im)
            if mag > bound:
                bound = mag
        bound = min(int(bound), 12)
        for a in range(0, (bound if P.deg_n > 0 else 0) + 1):
            for b in range(0, (bound if P.deg_k > 0 else 0) + 1):
                if a == 0 and b == 0:
                    continue
                for ell in range(2, max_constant + 1):
                    if gcd(gcd(a, b), ell) != 1:
                        continue
                    if P.divide_linear(a, b, GaussianRational.of(ell)) is None:
                        continue
                    current = absorb_linear_factor(current, a, b, ell)
                    changed = True
                    break
                if changed:
                    break
            if changed:
                break
    return current
