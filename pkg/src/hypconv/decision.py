"""Decision procedure for uniform dominated convergence, and limits.

decide() evaluates the seven exact conditions in dependency order: the
balance inequalities first, then the two boundary conditions, then (when
both balances are tight) the refined boundary conditions and finally the
landscape conditions, whose validity as a finite check rests on the earlier
ones.  Every comparison is exact; witnesses record which clause failed or
carried the decision.

limit_series() classifies the limit of the accepted family (zero, a closed
constant, or a single-index series) and evaluates it numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath as mp

from .core_arith import Fraction, GaussianRational, QQ_ONE, point_to_float
from .g_landscape import CriticalAnalysis, critical_points
from .invariants import StructuralConstants, h0_value, structural_constants
from .phi_series import phi_expansion
from .piecewise import psi_functions, psi_star
from .term_model import ProperTerm, validate
from .core_arith import isolate_real_roots, poly_gcd


CONDITION_IDS = ("i", "ii", "iii", "iv", "v", "vi", "vii")


@dataclass(frozen=True)
class ConditionResult:
    cid: str
    applicable: bool
    satisfied: Optional[bool]  # None when not evaluated
    witnesses: tuple = ()

    def holds(self) -> bool:
        return (not self.applicable) or bool(self.satisfied)


@dataclass(frozen=True)
class Verdict:
    uniform: bool
    conditions: tuple
    notes: tuple = ()

    def condition(self, cid: str) -> ConditionResult:
        for c in self.conditions:
            if c.cid == cid:
                return c
        raise KeyError(cid)

    def to_dict(self) -> dict:
        return {
            "uniform": self.uniform,
            "conditions": [
                {
                    "id": c.cid,
                    "applicable": c.applicable,
                    "satisfied": c.satisfied,
                    "witnesses": list(c.witnesses),
                }
                for c in self.conditions
            ],
            "notes": list(self.notes),
        }

    @staticmethod
    def from_dict(d: dict) -> "Verdict":
        return Verdict(
            uniform=bool(d["uniform"]),
            conditions=tuple(
                ConditionResult(
                    cid=c["id"],
                    applicable=bool(c["applicable"]),
                    satisfied=c["satisfied"],
                    witnesses=tuple(c["witnesses"]),
                )
                for c in d["conditions"]
            ),
            notes=tuple(d.get("notes", ())),
        )

    def human_lines(self):
        lines = [f"uniform dominated convergence: "
                 f"{'YES' if self.uniform else 'NO'}"]
        for c in self.conditions:
            if not c.applicable:
                status = "n/a"
            elif c.satisfied:
                status = "ok"
            else:
                status = "FAIL"
            lines.append(f"  condition ({c.cid}): {status}")
            for w in c.witnesses:
                lines.append(f"      {w}")
        for n in self.notes:
            lines.append(f"note: {n}")
        return lines


def _point_desc(t) -> str:
    if isinstance(t, Fraction):
        return f"t = {t}"
    return f"t ~ {point_to_float(t):.9g} (algebraic)"


def decide(term: ProperTerm) -> Verdict:
    """Exact yes/no decision with per-condition diagnostics."""
    validate(term)
    c = structural_constants(term)
    notes = []
    results = {}

    # (i) both balance exponents nonpositive
    wit = []
    if c.D0 > 0:
        wit.append(f"k-direction balance {c.D0} > 0")
    if c.D0_star > 0:
        wit.append(f"n-direction balance {c.D0_star} > 0")
    sat_i = not wit
    results["i"] = ConditionResult("i", True, sat_i, tuple(wit))

    # (ii) tight k-direction balance
    z0_sq = c.z0.abs2()
    app_ii = c.D0 == 0
    if app_ii:
        if z0_sq < 1:
            results["ii"] = ConditionResult(
                "ii", True, True, (f"|z0|^2 = {z0_sq} < 1",))
        elif z0_sq == 1 and c.A0.re < 0 and c.D1_star <= 0:
            results["ii"] = ConditionResult(
                "ii", True, True,
                (f"|z0| = 1, Re A0 = {c.A0.re} < 0, D1* = {c.D1_star} <= 0",))
        else:
            wit = [f"|z0|^2 = {z0_sq}"]
            if z0_sq == 1:
                if c.A0.re >= 0:
                    wit.append(f"Re A0 = {c.A0.re} >= 0")
                if c.D1_star > 0:
                    wit.append(f"D1* = {c.D1_star} > 0")
            results["ii"] = ConditionResult("ii", True, False, tuple(wit))
    else:
        results["ii"] = ConditionResult("ii", False, None)

    # (iii) tight n-direction balance
    zeta0_sq = c.zeta0.abs2()
    app_iii = c.D0_star == 0
    if app_iii:
        if zeta0_sq < 1:
            results["iii"] = ConditionResult(
                "iii", True, True, (f"|zeta0|^2 = {zeta0_sq} < 1",))
        elif zeta0_sq == 1 and c.A_inf_star.re < 0 and c.D1 <= 0:
            results["iii"] = ConditionResult(
                "iii", True, True,
                (f"|zeta0| = 1, Re Ainf* = {c.A_inf_star.re} < 0, "
                 f"D1 = {c.D1} <= 0",))
        elif c.zeta0 == QQ_ONE and c.A_inf_star.is_zero() and c.D1 <= 0:
            results["iii"] = ConditionResult(
                "iii", True, True,
                (f"zeta0 = 1, Ainf* = 0, D1 = {c.D1} <= 0",))
        else:
            wit = [f"|zeta0|^2 = {zeta0_sq}, Ainf* = {c.A_inf_star}, "
                   f"D1 = {c.D1}"]
            results["iii"] = ConditionResult("iii", True, False, tuple(wit))
    else:
        results["iii"] = ConditionResult("iii", False, None)

    strict_balance = c.D0 < 0 or c.D0_star < 0
    if strict_balance or c.D0 > 0 or c.D0_star > 0:
        reason = ("some balance exponent is strictly negative"
                  if strict_balance else "condition (i) already fails")
        for cid in ("iv", "v", "vi", "vii"):
            results[cid] = ConditionResult(cid, False, None, (reason,))
        uniform = all(results[cid].holds() for cid in CONDITION_IDS)
        return Verdict(uniform, tuple(results[cid] for cid in CONDITION_IDS),
                       tuple(notes))

    # from here on both balances are tight: D0 = D0* = 0
    psi0, psi_inf = psi_functions(term, c)

    # (vi) k-heavy boundary refinement
    app_vi = z0_sq == 1 and c.D1_star == 0
    if app_vi:
        zeta1_sq = c.zeta1.abs2()
        if zeta1_sq < 1:
            results["vi"] = ConditionResult(
                "vi", True, True, (f"|zeta1|^2 = {zeta1_sq} < 1",))
        elif zeta1_sq == 1:
            exp0 = phi_expansion(term, "zero")
            if exp0.identically_zero:
                ok = c.A1.re <= 0
                results["vi"] = ConditionResult(
                    "vi", True, ok,
                    (f"|zeta1| = 1, curvature series vanishes, "
                     f"Re A1 = {c.A1.re} {'<= 0' if ok else '> 0'}",))
            else:
                pq = Fraction(exp0.m, exp0.m + 1)
                val = psi0.re_value(pq)
                ok = exp0.v_m_sign < 0 and val < 0
                results["vi"] = ConditionResult(
                    "vi", True, ok,
                    (f"|zeta1| = 1, first curvature coefficient m = {exp0.m} "
                     f"sign {exp0.v_m_sign}, Re psi0({pq}) = {val}",))
        else:
            results["vi"] = ConditionResult(
                "vi", True, False, (f"|zeta1|^2 = {zeta1_sq} > 1",))
    else:
        results["vi"] = ConditionResult("vi", False, None)

    # (vii) n-heavy boundary refinement
    app_vii = zeta0_sq == 1 and c.D1 == 0
    if app_vii:
        z1_sq = c.z1.abs2()
        if z1_sq < 1:
            results["vii"] = ConditionResult(
                "vii", True, True, (f"|z1|^2 = {z1_sq} < 1",))
        elif z1_sq == 1:
            expi = phi_expansion(term, "infinity")
            if expi.identically_zero:
                if c.A1_star.re < 0:
                    results["vii"] = ConditionResult(
                        "vii", True, True,
                        ("|z1| = 1, curvature series vanishes, "
                         f"Re A1* = {c.A1_star.re} < 0",))
                elif c.A1_star.re == 0 and (
                        c.A_inf_star.re < 0
                        or term.P.deg_total > term.P.deg_n + c.deg_k_Q):
                    results["vii"] = ConditionResult(
                        "vii", True, True,
                        ("|z1| = 1, curvature series vanishes, Re A1* = 0 "
                         "with strict n-heavy decay",))
                else:
                    results["vii"] = ConditionResult(
                        "vii", True, False,
                        (f"|z1| = 1, curvature series vanishes, "
                         f"Re A1* = {c.A1_star.re} fails the decay test",))
            else:
                pq = Fraction(expi.m + 1, expi.m)
                val = psi_inf.re_value(pq)
                ok = expi.v_m_sign < 0 and val < 0
                if ok and c.A_inf_star.is_zero():
                    ok = c.A0_star.re < 0
                results["vii"] = ConditionResult(
                    "vii", True, ok,
                    (f"|z1| = 1, first curvature coefficient m = {expi.m} "
                     f"sign {expi.v_m_sign}, Re psi_inf({pq}) = {val}, "
                     f"A0* = {c.A0_star}",))
        else:
            results["vii"] = ConditionResult(
                "vii", True, False, (f"|z1|^2 = {z1_sq} > 1",))
    else:
        results["vii"] = ConditionResult("vii", False, None)

    prereq = (results["ii"].holds() and results["iii"].holds()
              and results["vii"].holds())
    if not prereq:
        for cid in ("iv", "v"):
            results[cid] = ConditionResult(
                cid, False, None,
                ("not evaluated: the landscape reduction requires "
                 "conditions (ii), (iii) and (vii)",))
        uniform = all(results[cid].holds() for cid in CONDITION_IDS)
        return Verdict(uniform, tuple(results[cid] for cid in CONDITION_IDS),
                       tuple(notes))

    analysis = critical_points(term, c)
    if analysis.g_is_constant:
        _conditions_iv_v_constant(term, c, analysis, results, notes)
    else:
        _conditions_iv_v_general(term, c, analysis, results)

    uniform = all(results[cid].holds() for cid in CONDITION_IDS)
    return Verdict(uniform, tuple(results[cid] for cid in CONDITION_IDS),
                   tuple(notes))


def _check_touch_point(term, c, t, witnesses) -> bool:
    """Conditions required at a point t > 0 where the landscape equals 1."""
    pw = psi_star(term, c, t)
    v0 = pw.re_value(0)
    if v0 >= 0:
        witnesses.append(f"{_point_desc(t)}: Re psi*(0) = {v0} >= 0")
        return False
    exp = phi_expansion(term, t)
    if exp.identically_zero:
        v1 = pw.re_value(1)
        if v1 > 0:
            witnesses.append(f"{_point_desc(t)}: curvature series vanishes "
                             f"but Re psi*(1) = {v1} > 0")
            return False
        witnesses.append(f"{_point_desc(t)}: Re psi*(0) = {v0} < 0, "
                         f"flat curvature, Re psi*(1) = {v1} <= 0")
        return True
    if exp.m_parity != "odd" or exp.v_m_sign >= 0:
        witnesses.append(f"{_point_desc(t)}: curvature m = {exp.m} "
                         f"({exp.m_parity}), sign {exp.v_m_sign}; needs an "
                         "odd order with negative coefficient")
        return False
    pq = Fraction(exp.m, exp.m + 1)
    vm = pw.re_value(pq)
    if vm >= 0:
        witnesses.append(f"{_point_desc(t)}: Re psi*({pq}) = {vm} >= 0")
        return False
    witnesses.append(f"{_point_desc(t)}: Re psi*(0) = {v0} < 0, curvature "
                     f"m = {exp.m} with negative coefficient, "
                     f"Re psi*({pq}) = {vm} < 0")
    return True


def _conditions_iv_v_general(term, c, analysis: CriticalAnalysis, results):
    iv_wit = []
    sat_iv = True
    touch_points = []
    for pt in analysis.points:
        if pt.g_equals_one:
            touch_points.append(pt)
        elif not pt.g_below_one:
            sat_iv = False
            iv_wit.append(f"{_point_desc(pt.t)}: landscape value exceeds 1")
    if sat_iv and not iv_wit:
        iv_wit.append("landscape stays <= 1 at every stationary and shear "
                      "point" if analysis.points else
                      "no stationary or shear points on (0, infinity)")
    results["iv"] = ConditionResult("iv", True, sat_iv, tuple(iv_wit))

    v_wit = []
    sat_v = True
    for pt in touch_points:
        if pt.in_omega and pt.omega_alpha_sum != 0:
            sat_v = False
            v_wit.append(f"{_point_desc(pt.t)}: landscape touches 1 at a "
                         f"shear point with multiplier sum "
                         f"{pt.omega_alpha_sum} != 0")
            continue
        if not _check_touch_point(term, c, pt.t, v_wit):
            sat_v = False
    if not touch_points:
        v_wit.append("landscape never touches 1 on (0, infinity)")
    results["v"] = ConditionResult("v", True, sat_v, tuple(v_wit))


def _conditions_iv_v_constant(term, c, analysis, results, notes):
    ca = analysis.constant_abs2
    notes.append("landscape is constant on (0, infinity)")
    if ca > 1:
        results["iv"] = ConditionResult(
            "iv", True, False, (f"landscape is constant with square {ca} > 1",))
        results["v"] = ConditionResult(
            "v", False, None, ("not evaluated: landscape exceeds 1",))
        return
    results["iv"] = ConditionResult(
        "iv", True, True, (f"landscape is constant with square {ca} <= 1",))
    if ca < 1:
        results["v"] = ConditionResult(
            "v", True, True, ("landscape never touches 1",))
        return
    # the landscape is identically 1: the touch-point conditions must hold
    # for every t > 0.  Away from finitely many exceptional points the
    # shear exponent function is the constant A1 + D1*/2 and the curvature
    # series vanishes identically (the grouped multiplier sums are zero),
    # so the generic requirement is a single strict inequality; the
    # exceptional points are the positive shear points plus the positive
    # roots of the leading-form coefficient, where the polynomial envelope
    # can shrink, and each is checked exactly.
    wit = []
    b1 = c.A1 + GaussianRational(c.D1_star / 2)
    sat = True
    if b1.re >= 0:
        sat = False
        wit.append(f"generic shear exponent Re(A1 + D1*/2) = {b1.re} >= 0")
    else:
        wit.append(f"generic shear exponent Re(A1 + D1*/2) = {b1.re} < 0")
    for t in _exceptional_points(term, c):
        if not _check_touch_point(term, c, t, wit):
            sat = False
    results["v"] = ConditionResult("v", True, sat, tuple(wit))


def _exceptional_points(term, c):
    points = [rho for rho, _, _, _ in c.omega if rho > 0]
    re, im = term.P.leading_form_poly()
    if im.is_zero():
        candidates = re
    elif re.is_zero():
        candidates = im
    else:
        candidates = poly_gcd(re, im)
    if not candidates.is_zero() and candidates.degree >= 1:
        for root in isolate_real_roots(candidates, 0, None):
            rat = root.as_rational()
            t = rat if rat is not None else root
            if any(isinstance(t, Fraction) and t == rho for rho in points):
                continue
            points.append(t)
    return points


# ---------------------------------------------------------------------------
# limits


@dataclass(frozen=True)
class LimitDescription:
    kind: str  # "zero" | "constant" | "series"
    value: complex
    error_bound: float
    detail: str


class LimitClassificationError(ValueError):
    """The term is outside the regime where the limit theorem applies."""


def limit_series(term: ProperTerm, tol: float = 1e-10,
                 dps: int = 30) -> LimitDescription:
    """Classify and evaluate the limit of the series family.

    Valid for terms accepted by decide(); the classification is exact, the
    value is numeric.  The limit is zero when the n-direction is strictly
    contracting; otherwise it is the limit constant times either the leading
    coefficient at the origin (strictly negative k-balance over the
    n-moving factors) or a single hypergeometric-type series in k.
    """
    c = structural_constants(term)
    if c.D0_star < 0 or c.zeta0.abs2() < 1 or c.A_inf_star.re < 0:
        return LimitDescription("zero", 0j, 0.0,
                                "termwise limits vanish")
    if not (c.D0_star == 0 and c.zeta0 == QQ_ONE and c.A_inf_star.is_zero()):
        raise LimitClassificationError(
            "termwise limits do not settle: the n-direction neither "
            "contracts nor is exactly balanced")
    if c.D1 > 0:
        raise LimitClassificationError("n-moving factors diverge in k")
    h0 = h0_value(c.h0, dps=dps)
    if c.D1 < 0:
        value = h0 * c.Q_at(0).to_complex()
        return LimitDescription(
            "constant", value, abs(value) * 1e-20,
            "limit constant times the leading coefficient at k = 0")
    s, err = _series_sum(term, c, tol, dps)
    return LimitDescription("series", h0 * s, abs(h0) * err,
                            "limit constant times the k-series of "
                            "termwise limits")


def _series_sum(term: ProperTerm, c: StructuralConstants, tol: float,
                dps: int):
    """sum_k Q(k) z_inf**k / k! prod over n-static factors of (b)_{beta k},
    via term recurrence with adaptive direct summation and a Levin fallback
    for slowly decaying tails."""
    statics = [f for f in term.factors if f.alpha == 0]

    def mpc_of(g):
        return mp.mpc(mp.mpf(g.re.numerator) / g.re.denominator,
                      mp.mpf(g.im.numerator) / g.im.denominator)

    # mp.nsum raises the working precision internally, so the recurrence
    # state is rebuilt from the exact rationals whenever mp.prec changes.
    state = {"prec": 0}

    def refresh():
        state["prec"] = mp.mp.prec
        state["z"] = mpc_of(c.z_inf)
        state["bases"] = [mpc_of(f.b) for f in statics]
        state["qc"] = [mpc_of(g) for g in (c.Q or (QQ_ONE,))]
        state["cache"] = [mp.mpc(1)]  # base_k = z**k/k! * prod (b)_{beta k}

    def base(k: int):
        if state["prec"] != mp.mp.prec:
            refresh()
        cache = state["cache"]
        z = state["z"]
        while len(cache) <= k:
            j = len(cache) - 1
            ratio = z / (j + 1)
            for f, b in zip(statics, state["bases"]):
                if f.beta > 0:
                    for i in range(f.beta):
                        ratio *= b + f.beta * j + i
                else:
                    for i in range(1, -f.beta + 1):
                        ratio /= b + f.beta * j - i
            cache.append(cache[-1] * ratio)
        return cache[k]

    def term_k(k: int):
        if state["prec"] != mp.mp.prec:
            refresh()
        acc = mp.mpc(0)
        for coeff in reversed(state["qc"]):
            acc = acc * k + coeff
        return acc * base(k)

    with mp.workdps(dps):
        total = mp.mpc(0)
        tol_mp = mp.mpf(tol)
        ratios = []
        for k in range(0, 4001):
            t = term_k(k)
            total += t
            if k >= 1:
                prev = term_k(k - 1)
                r = mp.fabs(t) / mp.fabs(prev) if mp.fabs(prev) > 0 else mp.inf
                ratios.append(r)
                ratios = ratios[-8:]
            if k >= 10 and ratios and max(ratios) < mp.mpf("0.95"):
                rmax = max(ratios)
                tail = mp.fabs(t) * rmax / (1 - rmax)
                if tail < tol_mp * (1 + mp.fabs(total)):
                    return complex(total), float(tail)
        # slow tail: Levin acceleration, recomputing terms at whatever
        # precision nsum asks for
        value = mp.nsum(lambda k: term_k(int(k)), [0, mp.inf], method="l")
        return complex(value), tol
