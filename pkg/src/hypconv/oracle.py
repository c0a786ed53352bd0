"""Floating-point oracle for proper terms.

Everything here is approximate by design: log-gamma based term evaluation,
suprema scans over the n direction, an empirical convergence classifier for
the dominating series sum_k sup_n |u(n, k)|, and a ladder extrapolation of
termwise limits.  The oracle never overrides the exact decision procedure;
it exists to cross-check it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath as mp
import numpy as np
from scipy.special import loggamma as _loggamma

from .term_model import ProperTerm

LOG_HUGE = 700.0  # beyond this exp() overflows double precision


def _log_pochhammer(b: complex, m: int) -> complex:
    """log of (b)_m with a branch whose exponential is exact.

    For negative shifts uses (b)_{-M} = (-1)**M / (1-b)_M, which stays
    finite for the integer bases admissibility allows there.
    """
    if m == 0:
        return 0.0 + 0.0j
    if m > 0:
        return _loggamma(b + m) - _loggamma(b)
    mm = -m
    return 1j * math.pi * mm - (_loggamma(1 - b + mm) - _loggamma(1 - b))


def term_log(term: ProperTerm, n: int, k: int) -> complex:
    """log u(n, k) (principal-ish branch; the real part is log |u|).

    Returns complex(-inf) when the polynomial part vanishes.
    """
    p = term.P.eval_complex(n, k)
    if p == 0:
        return complex(-math.inf, 0.0)
    acc = complex(np.log(complex(p)))
    if n:
        acc += n * complex(np.log(term.xi.to_complex()))
    if k:
        acc += k * complex(np.log(term.theta.to_complex()))
    acc -= _loggamma(k + 1.0)
    for f in term.factors:
        acc += _log_pochhammer(f.b.to_complex(), f.alpha * n + f.beta * k)
    return acc


def term_value(term: ProperTerm, n: int, k: int,
               dps: Optional[int] = None) -> complex:
    """u(n, k) as a complex number; with dps set, evaluated in mpmath."""
    if dps is None:
        lg = term_log(term, n, k)
        if lg.real == -math.inf:
            return 0j
        if lg.real > LOG_HUGE:
            raise OverflowError("term magnitude exceeds double range")
        return complex(np.exp(lg))
    with mp.workdps(dps):
        p = term.P.eval_exact(n, k)
        acc = mp.mpc(mp.mpf(p.re.numerator) / p.re.denominator,
                     mp.mpf(p.im.numerator) / p.im.denominator)
        if acc == 0:
            return 0j
        xi = mp.mpc(mp.mpf(term.xi.re.numerator) / term.xi.re.denominator,
                    mp.mpf(term.xi.im.numerator) / term.xi.im.denominator)
        th = mp.mpc(mp.mpf(term.theta.re.numerator) / term.theta.re.denominator,
                    mp.mpf(term.theta.im.numerator) / term.theta.im.denominator)
        acc *= xi ** n * th ** k / mp.factorial(k)
        for f in term.factors:
            b = mp.mpc(mp.mpf(f.b.re.numerator) / f.b.re.denominator,
                       mp.mpf(f.b.im.numerator) / f.b.im.denominator)
            m = f.alpha * n + f.beta * k
            if m >= 0:
                acc *= mp.rf(b, m)
            else:
                acc *= (-1) ** (-m) / mp.rf(1 - b, -m)
        return acc


def _log_pochhammer_array(b: complex, m: np.ndarray) -> np.ndarray:
    out = np.zeros(m.shape, dtype=complex)
    pos = m > 0
    neg = m < 0
    if pos.any():
        out[pos] = _loggamma(b + m[pos]) - _loggamma(b)
    if neg.any():
        mm = -m[neg]
        out[neg] = 1j * math.pi * mm - (_loggamma(1 - b + mm) - _loggamma(1 - b))
    return out


def term_logabs_array(term: ProperTerm, n: np.ndarray, k: int) -> np.ndarray:
    """log |u(n, k)| over an integer array of n (vectorized)."""
    n = np.asarray(n, dtype=float)
    p = term.P.eval_complex(n, float(k))
    p = np.asarray(p, dtype=complex) + np.zeros_like(n, dtype=complex)
    with np.errstate(divide="ignore"):
        acc = np.where(p == 0, -np.inf, np.log(np.abs(p)))
    acc = acc + n * 0.5 * math.log(float(term.xi.abs2()))
    acc = acc + k * 0.5 * math.log(float(term.theta.abs2()))
    acc = acc - _loggamma(k + 1.0).real
    for f in term.factors:
        m = (f.alpha * n + f.beta * k).astype(int)
        acc = acc + _log_pochhammer_array(f.b.to_complex(), m).real
    return acc


def sup_scan(term: ProperTerm, k: int, n_max: int = 4000):
    """(log sup_n |u(n, k)|, argmax n) over 0 <= n <= n_max.

    Uses a geometric coarse grid refined around the best point, so the cost
    is logarithmic in n_max per refinement level.
    """
    steps = max(1, int(math.ceil(math.log(max(n_max, 33) / 32) / math.log(1.25))))
    grid = sorted(set(
        list(range(0, min(n_max, 32) + 1))
        + [min(n_max, int(round(32 * 1.25 ** j))) for j in range(steps + 1)]
    ))
    grid = [n for n in grid if n <= n_max]
    vals = term_logabs_array(term, np.array(grid), k)
    best = int(np.argmax(vals))
    best_log, best_n = float(vals[best]), grid[best]
    lo = grid[best - 1] if best > 0 else grid[0]
    hi = grid[best + 1] if best + 1 < len(grid) else grid[-1]
    while hi - lo > 128:
        sub = np.unique(np.linspace(lo, hi, 65).astype(int))
        vals = term_logabs_array(term, sub, k)
        b = int(np.argmax(vals))
        if float(vals[b]) > best_log:
            best_log, best_n = float(vals[b]), int(sub[b])
        lo = int(sub[max(b - 1, 0)])
        hi = int(sub[min(b + 1, len(sub) - 1)])
    if hi > lo:
        sub = np.arange(lo, hi + 1)
        vals = term_logabs_array(term, sub, k)
        b = int(np.argmax(vals))
        if float(vals[b]) > best_log:
            best_log, best_n = float(vals[b]), int(sub[b])
    return best_log, best_n


@dataclass(frozen=True)
class EmpiricalReport:
    classification: str  # "converges" | "diverges" | "inconclusive"
    detail: str
    k_used: int
    sum_estimate: float
    sup_logs: tuple


def empirical_verdict(term: ProperTerm, k_max: int = 2000, n_max: int = 4000,
                      tol: float = 1e-8, divergence_threshold: float = 1e12,
                      divergence_run: int = 50) -> EmpiricalReport:
    """Empirical classification of sum_k sup_n |u(n, k)|.

    Declares divergence when the partial sums pass the threshold or the
    suprema grow for ``divergence_run`` consecutive k; declares convergence
    when the tail is certifiably small under a geometric or fast power-law
    decay reading; stays inconclusive otherwise.
    """
    logs = []
    total = 0.0
    inc_run = 0
    log_threshold = math.log(divergence_threshold)
    for k in range(k_max + 1):
        # the termwise limit is approached with corrections of order k**2/n,
        # so seeing the true supremum requires an n budget well past k**2
        n_budget = max(n_max, 100 * k * k)
        log_m, arg_n = sup_scan(term, k, n_budget)
        if arg_n >= n_budget - 1:
            # the maximizer sits on the n budget boundary; a sequence that
            # converges to its n -> infinity limit gains ever less per
            # doubling of n, while an unbounded one keeps gaining, so
            # compare the increments across the last two doublings
            ends = term_logabs_array(
                term, np.array([n_budget // 4, n_budget // 2, n_budget]), k)
            gain_prev = float(ends[1]) - float(ends[0])
            gain_last = float(ends[2]) - float(ends[1])
            if gain_last > 0.05 and gain_last > 0.6 * gain_prev:
                return EmpiricalReport(
                    "diverges",
                    f"sup at k = {k} keeps growing at the n budget",
                    k, math.inf, tuple(logs))
        logs.append(log_m)
        if log_m > log_threshold:
            return EmpiricalReport(
                "diverges", f"sup at k = {k} already exceeds the threshold",
                k, math.inf, tuple(logs))
        total += math.exp(log_m) if log_m > -LOG_HUGE else 0.0
        if total > divergence_threshold:
            return EmpiricalReport(
                "diverges", f"partial sums exceed {divergence_threshold:g}",
                k, total, tuple(logs))
        if k >= 1 and logs[-1] > logs[-2]:
            inc_run += 1
            if inc_run >= divergence_run:
                return EmpiricalReport(
                    "diverges",
                    f"suprema increased for {divergence_run} consecutive k",
                    k, total, tuple(logs))
        else:
            inc_run = 0
        if k >= 20:
            tail_logs = logs[-10:]
            ratios = [math.exp(b - a) for a, b in zip(tail_logs, tail_logs[1:])
                      if a > -LOG_HUGE]
            if ratios and max(ratios) < 0.95:
                r = max(ratios)
                tail = math.exp(logs[-1]) * r / (1 - r)
                if tail < tol * max(1.0, total):
                    return EmpiricalReport(
                        "converges",
                        f"geometric tail below tolerance after k = {k}",
                        k, total + tail, tuple(logs))
    # budget exhausted: read the tail as a power law
    k0 = len(logs) // 2
    xs = [math.log(k) for k in range(k0, len(logs)) if logs[k] > -LOG_HUGE]
    ys = [logs[k] for k in range(k0, len(logs)) if logs[k] > -LOG_HUGE]
    if len(xs) >= 16:
        n = len(xs)
        mx, my = sum(xs) / n, sum(ys) / n
        denom = sum((x - mx) ** 2 for x in xs)
        slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / denom
        if slope <= -1.2:
            k_last = len(logs) - 1
            tail = math.exp(logs[-1]) * k_last / (-slope - 1)
            return EmpiricalReport(
                "converges",
                f"power-law tail with exponent {slope:.3f}; "
                f"tail estimate {tail:.3g}",
                k_last, total + tail, tuple(logs))
        if slope >= -0.8:
            return EmpiricalReport(
                "diverges",
                f"power-law tail with exponent {slope:.3f} >= -0.8",
                len(logs) - 1, total, tuple(logs))
    return EmpiricalReport(
        "inconclusive", "tail neither certifiably small nor clearly divergent",
        len(logs) - 1, total, tuple(logs))


# ---------------------------------------------------------------------------
# termwise limits by ladder extrapolation


class ExtrapolationError(ArithmeticError):
    pass


def _neville_to_zero(xs, ys):
    """Polynomial extrapolation of (xs, ys) to x = 0; returns (value, err)."""
    tab = list(ys)
    last = tab[0]
    err = math.inf
    for level in range(1, len(xs)):
        for i in range(len(xs) - level):
            tab[i] = tab[i + 1] + (tab[i + 1] - tab[i]) * xs[i + level] / \
                (xs[i] - xs[i + level])
        cur = tab[0]
        err = abs(cur - last)
        last = cur
    return last, err


def termwise_limit(term: ProperTerm, k: int, dps: Optional[int] = None):
    """lim_n u(n, k) by Richardson-style extrapolation over a geometric n
    ladder; returns (value, error_estimate)."""
    ns = [16 * 2 ** j for j in range(11)]
    if dps is None:
        vals = [term_value(term, n, k) for n in ns]
    else:
        vals = [complex(term_value(term, n, k, dps=dps)) for n in ns]
    xs = [1.0 / n for n in ns]
    value, err = _neville_to_zero(xs, vals)
    if not (abs(value) < math.inf):
        raise ExtrapolationError(f"ladder diverges at k = {k}")
    return value, err


def limit_value_numeric(term: ProperTerm, tol: float = 1e-8,
                        k_cap: int = 4000) -> complex:
    """Numeric limit of the series family from extrapolated termwise limits.

    Sums the extrapolated limits directly while the decay is geometric; for
    power-law tails it reruns the leading terms on a high-precision ladder
    and accelerates the partial sums with a Levin transform, keeping the
    iterate whose combined error estimate (transform residual plus the
    accumulated extrapolation noise of the terms fed in) is smallest.
    """
    total = 0j
    terms = []
    for k in range(k_cap + 1):
        v, _ = termwise_limit(term, k)
        terms.append(v)
        total += v
        if k >= 10:
            mags = [abs(t) for t in terms[-8:]]
            ratios = [b / a for a, b in zip(mags, mags[1:]) if a > 0]
            if ratios and max(ratios) < 0.9:
                r = max(ratios)
                tail = abs(terms[-1]) * r / (1 - r)
                if tail < tol * max(1.0, abs(total)):
                    return total
            if k >= 120:
                break
    # slow tail: the term extrapolations get noisier with k, so the Levin
    # transform is only trustworthy over an initial window
    with mp.workdps(30):
        accel = mp.levin(method="levin", variant="u")
        psums = []
        s = mp.mpc(0)
        noise = 0.0
        best_value = None
        best_err = math.inf
        rising = 0
        for k in range(81):
            v, est = termwise_limit(term, k, dps=30)
            noise += est
            s += mp.mpc(v.real, v.imag)
            psums.append(s)
            value, residual = accel.update_psum(psums)
            if k < 5:
                continue
            combined = float(residual) + noise
            if combined < best_err:
                best_err = combined
                best_value = complex(value)
                rising = 0
            else:
                rising += 1
                if rising >= 12:
                    break
    return best_value


# ---------------------------------------------------------------------------
# small numeric helpers validated by the test suite


def theta(x: float) -> float:
    """((1 + x)/x) log(1 + x) - 1, the exponent correction kernel; theta(0) = 0.
    Near zero a short Taylor evaluation avoids cancellation."""
    if x <= -1:
        raise ValueError("theta requires x > -1")
    if abs(x) < 1e-3:
        return sum(float(theta_series_coeff(j)) * x ** j for j in range(1, 9))
    return (1 + x) / x * math.log1p(x) - 1


def theta_series_coeff(j: int) -> Fraction:
    """Taylor coefficient of theta at 0: (-1)**(j+1) / (j (j+1))."""
    if j < 1:
        raise ValueError("coefficients start at j = 1")
    return Fraction((-1) ** (j + 1), j * (j + 1))


def stirling_relative_error(m: float) -> float:
    """Relative error of the bare Stirling form at m (no series corrections)."""
    log_approx = 0.5 * math.log(2 * math.pi) + (m - 0.5) * math.log(m) - m
    return abs(math.expm1(log_approx - _loggamma(float(m)).real))


def pochhammer_asymptotic_error(b: complex, m: int) -> float:
    """Relative error of (b)_m ~ Gamma(m) m**b / Gamma(b) at finite m."""
    exact = _loggamma(b + m) - _loggamma(b)
    approx = _loggamma(float(m)) + b * math.log(m) - _loggamma(b)
    return abs(complex(np.exp(approx - exact)) - 1.0)
