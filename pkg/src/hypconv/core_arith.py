"""Exact arithmetic substrate.

Rationals, Gaussian rationals, univariate polynomials over the rationals,
Sturm-sequence real root isolation and real algebraic numbers with exact
sign determination.  Everything in this module works in exact rational
arithmetic; no floating point enters any decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

RationalLike = Union[int, Fraction]


class CoreArithError(ValueError):
    """Invalid input to an exact-arithmetic operation."""


def as_fraction(x) -> Fraction:
    """Coerce an int, Fraction or string like "3/4" to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise CoreArithError(f"cannot interpret {x!r} as a rational number")


@dataclass(frozen=True)
class GaussianRational:
    """A complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, tuple):
            return GaussianRational(as_fraction(x[0]), as_fraction(x[1]))
        return GaussianRational(as_fraction(x))

    def __add__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.of(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.of(other)
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        return GaussianRational.of(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise CoreArithError("only integer powers are supported")
        if n < 0:
            return (GaussianRational.of(1) / self) ** (-n)
        result = GaussianRational.of(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, an exact rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_nonpositive_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1 and self.re <= 0

    def is_nonnegative_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1 and self.re >= 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


QQ_ZERO = GaussianRational()
QQ_ONE = GaussianRational(Fraction(1))


# ---------------------------------------------------------------------------
# univariate polynomials over Q


def _trim(coeffs: Sequence[Fraction]) -> tuple:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class PolyQ:
    """A univariate polynomial with rational coefficients, ascending order."""

    coeffs: tuple

    @staticmethod
    def of(coeffs) -> "PolyQ":
        return PolyQ(_trim([as_fraction(c) for c in coeffs]))

    @staticmethod
    def constant(c) -> "PolyQ":
        return PolyQ.of([c])

    @staticmethod
    def linear(c0, c1) -> "PolyQ":
        """The polynomial c1*x + c0."""
        return PolyQ.of([c0, c1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "PolyQ") -> "PolyQ":
        n = max(len(self.coeffs), len(other.coeffs))
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            out[i] += c
        for i, c in enumerate(other.coeffs):
            out[i] += c
        return PolyQ(_trim(out))

    def __sub__(self, other: "PolyQ") -> "PolyQ":
        return self + (-other)

    def __neg__(self) -> "PolyQ":
        return PolyQ(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "PolyQ") -> "PolyQ":
        if self.is_zero() or other.is_zero():
            return PolyQ(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyQ(_trim(out))

    def scale(self, c) -> "PolyQ":
        c = as_fraction(c)
        return PolyQ(_trim([a * c for a in self.coeffs]))

    def derivative(self) -> "PolyQ":
        return PolyQ(_trim([i * c for i, c in enumerate(self.coeffs)][1:]))

    def divmod(self, other: "PolyQ"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return PolyQ(()), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for i in range(dq, -1, -1):
            c = rem[i + len(other.coeffs) - 1] / lead
            quot[i] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return PolyQ(_trim(quot)), PolyQ(_trim(rem))

    def monic(self) -> "PolyQ":
        if self.is_zero():
            return self
        return self.scale(1 / self.coeffs[-1])

    def integer_primitive(self) -> "PolyQ":
        """Scale to coprime integer coefficients with positive leading one."""
        if self.is_zero():
            return self
        from math import gcd, lcm

        den = lcm(*[c.denominator for c in self.coeffs])
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return PolyQ(tuple(Fraction(v) for v in ints))


def poly_gcd(a: PolyQ, b: PolyQ) -> PolyQ:
    """Monic greatest common divisor via the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def squarefree_part(p: PolyQ) -> PolyQ:
    """The product of the distinct irreducible factors of p."""
    if p.is_zero():
        raise CoreArithError("zero polynomial has no square-free part")
    if p.degree == 0:
        return PolyQ.constant(1)
    g = poly_gcd(p, p.derivative())
    q, r = p.divmod(g)
    assert r.is_zero()
    return q.integer_primitive()


def sturm_chain(p: PolyQ) -> list:
    """Standard Sturm sequence of p."""
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        rem = chain[-2].divmod(chain[-1])[1]
        chain.append(-rem)
    chain.pop()
    return chain


def _divisors(n: int):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def sign_variations(chain, x: Fraction) -> int:
    signs = [s for s in (_sign(q(x)) for q in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_between(chain, a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in (a, b]; endpoints must not be roots
    of chain[0] for the open-interval reading used here."""
    return sign_variations(chain, a) - sign_variations(chain, b)


def cauchy_bound(p: PolyQ) -> Fraction:
    """All real roots of p lie in (-bound, bound)."""
    if p.degree < 1:
        return Fraction(1)
    lead = abs(p.coeffs[-1])
    return 1 + max(abs(c) for c in p.coeffs[:-1]) / lead


@dataclass(frozen=True)
class AlgebraicReal:
    """A real algebraic number given by a square-free integer polynomial and
    an open isolating interval with rational endpoints.

    Invariants: ``defining`` has exactly one real root in ``(lo, hi)`` and
    takes opposite nonzero signs at the endpoints.  Instances are immutable;
    refinement returns new instances.
    """

    defining: PolyQ
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo >= self.hi:
            raise CoreArithError("empty isolating interval")
        slo = _sign(self.defining(self.lo))
        shi = _sign(self.defining(self.hi))
        if slo == 0 or shi == 0 or slo == shi:
            raise CoreArithError("endpoint signs must be opposite and nonzero")

    @staticmethod
    def from_rational(r) -> "AlgebraicReal":
        r = as_fraction(r)
        defining = PolyQ.linear(-r, 1).integer_primitive()
        return AlgebraicReal(defining, r - 1, r + 1)

    def halved(self) -> "AlgebraicReal":
        """One bisection step on the isolating interval."""
        mid = (self.lo + self.hi) / 2
        s = _sign(self.defining(mid))
        if s == 0:
            # the root is exactly mid; shrink symmetrically around it
            w = (self.hi - self.lo) / 4
            return AlgebraicReal(self.defining, mid - w, mid + w)
        if s == _sign(self.defining(self.lo)):
            return AlgebraicReal(self.defining, mid, self.hi)
        return AlgebraicReal(self.defining, self.lo, mid)

    def refined(self, width: Fraction) -> "AlgebraicReal":
        """Refine until the isolating interval is narrower than width."""
        cur = self
        while cur.hi - cur.lo >= width:
            cur = cur.halved()
        return cur

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def approx(self, eps) -> Fraction:
        """A rational approximation within eps of the exact value."""
        return self.refined(as_fraction(eps)).midpoint()

    def to_float(self) -> float:
        return float(self.approx(Fraction(1, 1 << 80)))

    def as_rational(self) -> Optional[Fraction]:
        """Exact rational value if the root is rational: either the defining
        polynomial is linear, or the rational-root test finds the root in the
        isolating interval."""
        if self.defining.degree == 1:
            return -self.defining.coeffs[0] / self.defining.coeffs[1]
        coeffs = [int(c) for c in self.defining.integer_primitive().coeffs]
        while coeffs[0] == 0:
            if self.lo < 0 < self.hi:
                return Fraction(0)
            coeffs.pop(0)
        lead, const = abs(coeffs[-1]), abs(coeffs[0])
        if lead > 10 ** 9 or const > 10 ** 9:
            return None  # divisor enumeration would be too costly
        for q in _divisors(lead):
            for p in _divisors(const):
                for r in (Fraction(p, q), Fraction(-p, q)):
                    if self.lo < r < self.hi and self.defining(r) == 0:
                        return r
        return None

    def __str__(self):
        return f"AlgebraicReal(~{self.to_float():.12g})"


def isolate_real_roots(p: PolyQ, lo=None, hi=None) -> list:
    """Isolate the distinct real roots of p in the open interval (lo, hi).

    ``lo``/``hi`` may be None for an unbounded side.  Returns AlgebraicReal
    values with pairwise disjoint isolating intervals, in increasing order.
    """
    if p.is_zero():
        raise CoreArithError("cannot isolate roots of the zero polynomial")
    if p.degree == 0:
        return []
    q = squarefree_part(p)
    bound = cauchy_bound(q)
    a = as_fraction(lo) if lo is not None else -bound
    b = as_fraction(hi) if hi is not None else bound
    if a >= b:
        return []
    # roots exactly at a supplied endpoint are excluded (open interval);
    # deflate them so Sturm counting sees nonzero endpoint values
    for endpoint in (a, b):
        while q(endpoint) == 0:
            q = q.divmod(PolyQ.linear(-endpoint, 1))[0]
    q = q.integer_primitive() if not q.is_zero() and q.degree >= 1 else q
    if q.degree < 1:
        return []
    chain = sturm_chain(q)

    out = []

    def bisect(x: Fraction, y: Fraction):
        n = count_roots_between(chain, x, y)
        if n == 0:
            return
        if n == 1:
            out.append(AlgebraicReal(q, x, y))
            return
        mid = (x + y) / 2
        if q(mid) == 0:
            delta = (y - x) / 4
            while True:
                u, v = mid - delta, mid + delta
                if q(u) != 0 and q(v) != 0 and count_roots_between(chain, u, v) == 1:
                    break
                delta /= 2
            bisect(x, u)
            out.append(AlgebraicReal(q, u, v))
            bisect(v, y)
        else:
            bisect(x, mid)
            bisect(mid, y)

    bisect(a, b)
    out.sort(key=lambda r: r.lo)
    return out


def vanishes_at(p: PolyQ, t) -> bool:
    """Exact test of p(t) == 0 for t rational or algebraic."""
    if isinstance(t, (int, Fraction)):
        return p(as_fraction(t)) == 0
    if p.is_zero():
        return True
    if p.degree == 0:
        return False
    g = poly_gcd(p, t.defining)
    if g.degree < 1:
        return False
    # every root of g is a root of the defining polynomial, and t is the
    # only such root in the isolating interval
    chain = sturm_chain(g)
    return count_roots_between(chain, t.lo, t.hi) > 0


def sign_at(p: PolyQ, t) -> int:
    """Exact sign of p(t) in {-1, 0, 1} for t rational or algebraic."""
    if isinstance(t, (int, Fraction)):
        return _sign(p(as_fraction(t)))
    if p.is_zero() or vanishes_at(p, t):
        return 0
    if p.degree == 0:
        return _sign(p.coeffs[0])
    ps = squarefree_part(p)
    chain = sturm_chain(ps)
    cur = t
    while True:
        lo, hi = cur.lo, cur.hi
        if ps(lo) != 0 and ps(hi) != 0 and count_roots_between(chain, lo, hi) == 0:
            return _sign(p(lo))
        cur = cur.halved()


def equals_rational(t, r) -> bool:
    """Exact test t == r with t rational or algebraic, r rational."""
    r = as_fraction(r)
    if isinstance(t, (int, Fraction)):
        return as_fraction(t) == r
    return vanishes_at(PolyQ.linear(-r, 1), t)


def point_to_float(t) -> float:
    if isinstance(t, (int, Fraction)):
        return float(t)
    return t.to_float()
