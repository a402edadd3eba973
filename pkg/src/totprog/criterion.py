"""The log f criterion and its finite verification.

log f(x;q,a) = loglog(phi(q) theta(x;q,a))/phi(q)
               + sum_{pbar<=x} log(1-1/pbar) - log C(q,a)

is negative exactly when the primorial inequality

    Nbar_k / (phi(Nbar_k) (log(phi(q) log Nbar_k))^{1/phi(q)}) > 1/C(q,a)

holds on [pbar_k, pbar_{k+1}).  This module evaluates log f on progression
primes (it is constant in between, so step points are exhaustive), the
auxiliary integrals and explicit bounds (g, F_s, truncated K, J-hat, p_q),
the threshold x_q, and the sweep that checks log f < 0 up to
max(floor(x_q), ceil(e^10) = 22027).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import mpmath as mp

from . import primes as primes_mod
from . import reference_data
from .characters import totient
from .constants import F_q, G_q, index_data, mertens_C
from .lvalues import Approx, DEFAULT_CTX, PrecisionContext, b_sum_signed, m0_sum

__all__ = [
    "g",
    "F_s",
    "rs_bound",
    "log_f",
    "log_f_series",
    "k_truncated",
    "jhat_bound",
    "jhat_signed_bound",
    "BoundParams",
    "bound_params",
    "p_q_of_x",
    "P_q",
    "x_q_threshold",
    "empirical_xq_check",
    "sweep",
    "grh_bound_check",
    "ConstantsBundle",
    "build_bundle",
]

E10_CEIL = 22027  # ceil(e^10)


def g(t) -> mp.mpf:
    """g(t) = -d^2/dt^2 loglog t = (1 + log t)/(t^2 log^2 t), t > 1."""
    if t <= 1:
        raise ValueError("g is defined for t > 1")
    t = mp.mpf(t)
    lt = mp.log(t)
    return (1 + lt) / (t * t * lt * lt)


def F_s(x, s, ctx: PrecisionContext = DEFAULT_CTX):
    """F_s(x) = int_x^inf t^s g(t) dt = -x^(s-1)/((s-1) log x) + r_s(x),
    with r_s evaluated by quadrature of its integral form."""
    with ctx.workprec():
        s = mp.mpc(s)
        if mp.re(s) >= 1:
            raise ValueError("F_s requires Re(s) < 1")
        x = mp.mpf(x)
        if x <= 1:
            raise ValueError("F_s requires x > 1")
        lead = -mp.power(x, s - 1) / ((s - 1) * mp.log(x))
        integral = mp.quad(
            lambda t: 2 * mp.power(t, s - 2) / ((s - 1) * mp.log(t) ** 3), [x, mp.inf]
        )
        r = -s / (1 - s) * (mp.power(x, s - 1) / ((1 - s) * mp.log(x) ** 2) + integral)
        return lead + r


def rs_bound(x, s, ctx: PrecisionContext = DEFAULT_CTX) -> mp.mpf:
    """Closed bound on |r_s(x)|:
    |s/(1-s)^2| x^(Re s - 1)/log^2 x * (1 + 2/(|Re s - 1| log x))."""
    with ctx.workprec():
        s = mp.mpc(s)
        x = mp.mpf(x)
        sig = mp.re(s)
        return (
            abs(s / (1 - s) ** 2)
            * mp.power(x, sig - 1)
            / mp.log(x) ** 2
            * (1 + 2 / (abs(sig - 1) * mp.log(x)))
        )


# --------------------------------------------------------------------------
# log f


def log_f(x, q: int, a: int, ctx: PrecisionContext = DEFAULT_CTX, table=None) -> mp.mpf:
    st = primes_mod.stats(q, a, table, ctx.prec)
    mc = mertens_C(q, a, ctx)
    with ctx.workprec():
        th = st.theta(x)
        if st.phi * th <= 1:
            raise ValueError("log f undefined until phi(q) theta(x) > 1")
        return (
            mp.log(mp.log(st.phi * th)) / st.phi + st.log_one_minus(x) - mc.log_C
        )


@dataclass(frozen=True)
class FEvaluation:
    q: int
    a: int
    log_C: mp.mpf
    rows: tuple  # (k, pbar_k, log f(pbar_k))


def log_f_series(q: int, a: int, xmax, ctx: PrecisionContext = DEFAULT_CTX, table=None) -> FEvaluation:
    """log f at every progression prime <= xmax (f is constant in between)."""
    st = primes_mod.stats(q, a, table, ctx.prec)
    mc = mertens_C(q, a, ctx)
    rows = []
    with ctx.workprec():
        for i, p in enumerate(st.pbar):
            if p > xmax:
                break
            if st.phi * st.theta_cum[i] <= 1:
                continue  # log f not yet defined (q = 1 at x = 2)
            val = (
                mp.log(mp.log(st.phi * st.theta_cum[i])) / st.phi
                + st.log1m_cum[i]
                - mc.log_C
            )
            rows.append((i + 1, p, val))
    return FEvaluation(q, st.a, mc.log_C, tuple(rows))


class KTruncated(NamedTuple):
    value: mp.mpf
    tail_estimate: mp.mpf  # heuristic: sup over sieved t>=T of |S| times 1/(T log T)


def k_truncated(x, T, q: int, a: int, ctx: PrecisionContext = DEFAULT_CTX, table=None) -> KTruncated:
    """int_x^T S(t;q,a) g(t) dt, exactly over the step structure of theta:
    on each segment theta is constant and both antiderivatives are explicit
    (int g = -1/(t log t), int t g = loglog t - 1/log t)."""
    st = primes_mod.stats(q, a, table, ctx.prec)
    if not (T > x > 1):
        raise ValueError("need T > x > 1")
    if T > st.table.limit:
        raise ValueError("sieve does not cover T")
    with ctx.workprec():

        def anti_g(t):
            t = mp.mpf(t)
            return -1 / (t * mp.log(t))

        def anti_tg(t):
            t = mp.mpf(t)
            return mp.log(mp.log(t)) - 1 / mp.log(t)

        import bisect

        i = bisect.bisect_right(st.pbar, int(x))
        total = mp.mpf(0)
        lo = mp.mpf(x)
        while lo < T:
            hi = mp.mpf(st.pbar[i]) if i < len(st.pbar) and st.pbar[i] <= T else mp.mpf(T)
            theta_val = st.theta_cum[i - 1] if i else mp.mpf(0)
            total += theta_val * (anti_g(hi) - anti_g(lo))
            lo = hi
            if i < len(st.pbar) and st.pbar[i] <= T:
                i += 1
        total -= (anti_tg(T) - anti_tg(mp.mpf(x))) / st.phi
        # heuristic tail estimate from the observed sup of |S| past T
        sup_S = mp.mpf(0)
        j = bisect.bisect_left(st.pbar, int(T))
        for idx in range(j, len(st.pbar)):
            p = st.pbar[idx]
            before = abs((st.theta_cum[idx - 1] if idx else mp.mpf(0)) - mp.mpf(p) / st.phi)
            after = abs(st.theta_cum[idx] - mp.mpf(p) / st.phi)
            sup_S = max(sup_S, before, after)
        sup_S = max(sup_S, abs(st.theta_cum[-1] - mp.mpf(st.table.limit) / st.phi))
        return KTruncated(total, sup_S / (mp.mpf(T) * mp.log(T)))


# --------------------------------------------------------------------------
# J-hat bounds and p_q


def jhat_bound(x, q: int, ctx: PrecisionContext = DEFAULT_CTX) -> mp.mpf:
    """|J-hat(x;q,a)| <= (0.01 phi + B_q + M_q)/(phi x log x) + M_q/(phi x)
    with the absolute-value aggregates (valid for x > e^4)."""
    if x <= mp.e**4:
        raise ValueError("bound requires x > e^4")
    from .lvalues import b_sum_abs

    phi = totient(q)
    with ctx.workprec():
        B = b_sum_abs(q, ctx).value
        M = m0_sum(q)
        x = mp.mpf(x)
        return (mp.mpf("0.01") * phi + B + M) / (phi * x * mp.log(x)) + mp.mpf(M) / (phi * x)


def jhat_signed_bound(x, q: int, ctx: PrecisionContext = DEFAULT_CTX) -> mp.mpf:
    """One-sided variant keeping signs:
    J-hat(x;q,1) <= (0.01 phi - B_q - M_q)/(x log x) - M_q/x."""
    if x <= mp.e**4:
        raise ValueError("bound requires x > e^4")
    phi = totient(q)
    with ctx.workprec():
        B = b_sum_signed(q, ctx).value
        M = m0_sum(q)
        x = mp.mpf(x)
        return (mp.mpf("0.01") * phi - B - M) / (x * mp.log(x)) - mp.mpf(M) / x


@dataclass(frozen=True)
class BoundParams:
    q: int
    F: mp.mpf
    G: mp.mpf
    R: int
    B_signed: mp.mpf
    M: int
    c1: Fraction | None
    c2: Fraction | None
    x_q: int | None
    P: mp.mpf


@lru_cache(maxsize=None)
def _bound_params_cached(q: int, prec: int) -> BoundParams:
    ctx = PrecisionContext(prec=prec)
    with ctx.workprec():
        F = F_q(q, ctx).value
        G = G_q(q, ctx).value
        R = index_data(q, 1).R
        B = b_sum_signed(q, ctx).value
        M = m0_sum(q)
        c1 = reference_data.c1_of(q)
        c2 = reference_data.c2_of(q)
        xq = x_q_threshold(q, c1) if c1 is not None else None
        P = _P_q_from(q, F, G, R, B, M, ctx)
        return BoundParams(q, F, G, R, B, M, c1, c2, xq, P)


def bound_params(q: int, ctx: PrecisionContext = DEFAULT_CTX) -> BoundParams:
    return _bound_params_cached(q, ctx.prec)


def _p_q_formula(x, phi, F, G, R, B, M):
    lx = mp.log(x)
    sx = mp.sqrt(x)
    return (
        (3 * F + mp.mpf("1.2") * R) / lx
        + (1 + 2 / lx) * G / sx
        + (mp.mpf("0.01") * phi - B - M) / sx
        - (mp.mpf(M) / x - mp.mpf(phi) / (2 * (x - 1))) * sx * lx
    )


def p_q_of_x(x, q: int, ctx: PrecisionContext = DEFAULT_CTX) -> mp.mpf:
    bp = bound_params(q, ctx)
    with ctx.workprec():
        return _p_q_formula(mp.mpf(x), totient(q), bp.F, bp.G, bp.R, bp.B_signed, bp.M)


def _P_q_from(q, F, G, R, B, M, ctx, grid: int = 10_000) -> mp.mpf:
    """max of p_q over [e^10, inf): coarse double-precision log grid on
    [e^10, 1e16] locates the argmax, then mpf refinement; beyond 1e16 every
    x-dependent term is dominated by its value at 1e16."""
    phi = totient(q)
    lo, hi = 10.0, math.log(1e16)
    Ff, Gf, Bf = float(F), float(G), float(B)

    def pf(lx):
        x = math.exp(lx)
        sx = math.sqrt(x)
        return (
            (3 * Ff + 1.2 * R) / lx
            + (1 + 2 / lx) * Gf / sx
            + (0.01 * phi - Bf - M) / sx
            - (M / x - phi / (2 * (x - 1))) * sx * lx
        )

    step = (hi - lo) / grid
    best_i = max(range(grid + 1), key=lambda i: pf(lo + i * step))
    with ctx.workprec():
        a = mp.mpf(lo + max(best_i - 1, 0) * step)
        b = mp.mpf(lo + min(best_i + 1, grid) * step)
        for _ in range(60):  # golden-section style trisection in log x
            m1 = a + (b - a) / 3
            m2 = b - (b - a) / 3
            f1 = _p_q_formula(mp.e**m1, phi, F, G, R, B, M)
            f2 = _p_q_formula(mp.e**m2, phi, F, G, R, B, M)
            if f1 < f2:
                a = m1
            else:
                b = m2
        xstar = mp.e ** ((a + b) / 2)
        peak = _p_q_formula(xstar, phi, F, G, R, B, M)
        for edge in (mp.e**10, mp.mpf(10) ** 16):
            peak = max(peak, _p_q_formula(edge, phi, F, G, R, B, M))
        return peak


def P_q(q: int, ctx: PrecisionContext = DEFAULT_CTX) -> mp.mpf:
    return bound_params(q, ctx).P


def x_q_threshold(q: int, c1) -> int:
    """floor((phi(q) c1 / 0.4)^4), computed in exact rational arithmetic."""
    c1 = Fraction(str(c1)) if not isinstance(c1, Fraction) else c1
    if c1 <= 0:
        raise ValueError("c1 must be positive")
    val = (Fraction(totient(q)) * c1 * Fraction(5, 2)) ** 4
    return val.numerator // val.denominator


@dataclass(frozen=True)
class XqCheckReport:
    q: int
    x_q: int
    X: int
    holds: bool
    first_violation: int | None


def empirical_xq_check(q: int, X: int, ctx: PrecisionContext = DEFAULT_CTX, table=None) -> XqCheckReport:
    """Verify theta(sqrt(x);q,b)/sqrt(x) > 0.6/phi(q) for every unit b and
    every x in (x_q, X], scanning the step points of theta."""
    bp = bound_params(q, ctx)
    xq = bp.x_q if bp.x_q is not None else 0
    if X <= xq:
        return XqCheckReport(q, xq, X, True, None)
    ymax = math.isqrt(X)
    table = table or primes_mod.default_table()
    if ymax > table.limit:
        raise ValueError("sieve does not cover sqrt(X)")
    phi = totient(q)
    worst = None
    from .characters import units as _units

    with ctx.workprec():
        ylo = mp.sqrt(mp.mpf(xq))
        for b in _units(max(q, 2)) if q > 1 else (1,):
            st = primes_mod.stats(q, b, table, ctx.prec)
            import bisect

            i = bisect.bisect_right(st.pbar, int(math.floor(float(ylo))))
            y = ylo
            while y < ymax:
                nxt = mp.mpf(st.pbar[i]) if i < len(st.pbar) and st.pbar[i] <= ymax else mp.mpf(ymax)
                theta_val = st.theta_cum[i - 1] if i else mp.mpf(0)
                # theta is flat on [y, nxt); the requirement is tightest at nxt
                if theta_val * phi < mp.mpf("0.6") * nxt:
                    xbad = int(mp.ceil(y * y)) + 1
                    if xbad <= X and (worst is None or xbad < worst):
                        worst = xbad
                y = nxt
                if i < len(st.pbar) and st.pbar[i] <= ymax:
                    i += 1
    return XqCheckReport(q, xq, X, worst is None, worst)


# --------------------------------------------------------------------------
# Sweeps and the conditional bound


@dataclass(frozen=True)
class SweepReport:
    q: int
    a: int
    x_max: int
    checked: int
    max_log_f: mp.mpf
    argmax_prime: int
    error_budget: mp.mpf
    verdict: str  # "all negative" | "violation" | "inconclusive"


def sweep(q: int, a: int = 1, ctx: PrecisionContext = DEFAULT_CTX, table=None, x_max=None) -> SweepReport:
    """Evaluate log f at every progression prime pbar_k <= x_max (default
    max(floor(x_q), printed floor, 22027)) and report the worst margin."""
    if x_max is None:
        bp = bound_params(q, ctx) if reference_data.c1_of(q) is not None else None
        candidates = [E10_CEIL]
        if bp is not None and bp.x_q is not None:
            candidates.append(bp.x_q)
        printed = reference_data.printed_xq_floor(q)
        if printed is not None:
            candidates.append(printed)
        x_max = max(candidates)
    ev = log_f_series(q, a, x_max, ctx, table)
    mc = mertens_C(q, a, ctx)
    with ctx.workprec():
        budget = mc.C.err / mc.C.value + 2 * ctx.eps(1)
        if not ev.rows:
            return SweepReport(q, a, int(x_max), 0, mp.mpf("nan"), 0, budget, "inconclusive")
        k, p, worst = max(ev.rows, key=lambda row: row[2])
        if worst >= 0:
            verdict = "violation"
        elif -worst > budget:
            verdict = "all negative"
        else:
            verdict = "inconclusive"
        return SweepReport(q, a, int(x_max), len(ev.rows), worst, p, budget, verdict)


def grh_bound_check(q: int, x, ctx: PrecisionContext = DEFAULT_CTX) -> mp.mpf:
    """(F_q - 1.2 R_{q,1} + p_q(x)) / (phi(q) sqrt(x) log x) -- the
    conditional upper bound on log f(x;q,1) for x > max(x_q, e^4)."""
    bp = bound_params(q, ctx)
    with ctx.workprec():
        x = mp.mpf(x)
        if bp.x_q is not None and x <= max(bp.x_q, mp.e**4):
            raise ValueError("bound valid for x > max(x_q, e^4)")
        num = bp.F - mp.mpf("1.2") * bp.R + _p_q_formula(x, totient(q), bp.F, bp.G, bp.R, bp.B_signed, bp.M)
        return num / (totient(q) * mp.sqrt(x) * mp.log(x))


# --------------------------------------------------------------------------
# Per-(q,a) bundle for the CLI


@dataclass(frozen=True)
class ConstantsBundle:
    q: int
    a: int
    C: Approx
    M: Approx
    Ind: int
    R: int
    F: Approx
    G: Approx
    B_signed: Approx
    B_abs: Approx
    M0: int
    P: mp.mpf | None
    x_q: int | None


def build_bundle(q: int, a: int = 1, ctx: PrecisionContext = DEFAULT_CTX) -> ConstantsBundle:
    from .lvalues import b_sum_abs

    mc = mertens_C(q, a, ctx)
    idx = index_data(q, a)
    have_c1 = reference_data.c1_of(q) is not None
    bp = bound_params(q, ctx)
    return ConstantsBundle(
        q,
        a % max(q, 2) if q > 1 else 1,
        mc.C,
        mc.M,
        idx.m,
        idx.R,
        F_q(q, ctx),
        G_q(q, ctx),
        b_sum_signed(q, ctx),
        b_sum_abs(q, ctx),
        m0_sum(q),
        bp.P,
        bp.x_q if have_c1 else None,
    )
