"""log f evaluation, auxiliary integrals/bounds, thresholds, sweeps."""

import math

import mpmath as mp
import pytest

from totprog import criterion as cr
from totprog.constants import mertens_C
from totprog.lvalues import PrecisionContext
from totprog.primes import primorials, stats


# -- g and F_s ---------------------------------------------------------------


def test_g_values():
    assert abs(cr.g(mp.e) - 2 / mp.e**2) < 1e-15
    assert abs(cr.g(mp.e**2) - 3 / (4 * mp.e**4)) < 1e-15
    with pytest.raises(ValueError):
        cr.g(1)


def test_F0_exact(ctx):
    # int_x^inf g dt = 1/(x log x)
    for x in (10, 100, 5000):
        with ctx.workprec():
            want = 1 / (mp.mpf(x) * mp.log(x))
        assert abs(cr.F_s(x, 0, ctx) - want) < 1e-20


@pytest.mark.parametrize("s", [0.5, -1, 0.25, complex(0.5, 14.13)])
def test_F_s_against_direct_quadrature(s, ctx):
    x = 50
    with ctx.workprec():
        direct = mp.quad(lambda t: mp.power(t, s) * cr.g(t), [x, mp.inf])
    assert abs(cr.F_s(x, s, ctx) - direct) < 1e-18


def test_F_s_domain(ctx):
    with pytest.raises(ValueError):
        cr.F_s(100, 1.5, ctx)
    with pytest.raises(ValueError):
        cr.F_s(0.5, 0, ctx)


@pytest.mark.parametrize("x", [100, 10_000, 1_000_000])
def test_F_half_remainder_within_bound(x, ctx):
    """Lemma-style bound: F_{1/2}(x) = -x^{-1/2}/((s-1) log x) + r with
    |r| <= |s/(1-s)^2| x^{-1/2}/log^2 x (1 + 2/(log x / 2))."""
    s = mp.mpf(1) / 2
    with ctx.workprec():
        lead = -mp.power(x, s - 1) / ((s - 1) * mp.log(x))
        r = cr.F_s(x, s, ctx) - lead
        assert abs(r) <= cr.rs_bound(x, s, ctx)
        # the remainder is genuinely smaller than the leading term here
        assert abs(r) < abs(lead)


def test_rs_bound_positive_and_decreasing(ctx):
    vals = [cr.rs_bound(x, 0.5, ctx) for x in (100, 10_000, 1_000_000)]
    assert vals[0] > vals[1] > vals[2] > 0


# -- log f -------------------------------------------------------------------


def test_log_f_hand_oracle_first_step(ctx, table):
    """At x = pbar_1 = 3 for (5,3): log f = loglog(4 log 3)/4 + log(2/3) - log C."""
    with ctx.workprec():
        want = (
            mp.log(mp.log(4 * mp.log(3))) / 4
            + mp.log(mp.mpf(2) / 3)
            - mertens_C(5, 3, ctx).log_C
        )
        assert abs(cr.log_f(3, 5, 3, ctx, table) - want) < ctx.eps(10)


def test_log_f_piecewise_constant(ctx, table):
    """f only changes at progression primes: values at interior points match
    the value at the previous step point."""
    for q, a in ((3, 1), (5, 3), (10, 9)):
        st = stats(q, a, table)
        for i in range(min(50, len(st.pbar) - 1)):
            p, nxt = st.pbar[i], st.pbar[i + 1]
            mid = (p + nxt) // 2
            if mid == p:
                continue
            assert cr.log_f(mid, q, a, ctx, table) == cr.log_f(p, q, a, ctx, table)


def test_log_f_requires_a_prime_below(ctx, table):
    with pytest.raises(ValueError):
        cr.log_f(10, 5, 1, ctx, table)  # first prime = 1 mod 5 is 11


def test_log_f_series_matches_pointwise(ctx, table):
    ev = cr.log_f_series(7, 1, 5000, ctx, table)
    assert ev.rows[0][1] == 29
    for k, p, val in ev.rows[:20]:
        assert abs(val - cr.log_f(p, 7, 1, ctx, table)) < 1e-40


def test_log_f_negative_for_q1(ctx, table):
    ev = cr.log_f_series(1, 1, 49_999, ctx, table)
    # log f is undefined at x = 2 (theta = log 2 < 1); the series starts at 3
    assert ev.rows[0][1] == 3
    assert all(v < 0 for _, _, v in ev.rows)
    with pytest.raises(ValueError):
        cr.log_f(2, 1, 1, ctx, table)


def test_log_f_positive_for_nonsquare_mod_7(ctx, table):
    # nonsquare residues mod 7 carry C < 1 progressions with positive log f
    ev = cr.log_f_series(7, 3, 50_000, ctx, table)
    positives = [p for _, p, v in ev.rows if v > 0]
    assert positives


def test_primorial_inequality_equivalence(ctx, table):
    """log f(pbar_k) < 0 iff Nbar/(phi(Nbar)(log(phi log Nbar))^(1/phi))
    exceeds 1/C, on the first 50 primorials of (5,1) and (5,3)."""
    for q, a in ((5, 1), (5, 3)):
        mc = mertens_C(q, a, ctx)
        seq = primorials(q, a, 50, table)
        with ctx.workprec():
            inv_c = 1 / mc.C.value
            for k, p, logn, logphin in seq.entries:
                ratio = mp.e ** (logn - logphin) / mp.log(4 * logn) ** (mp.mpf(1) / 4)
                lf = cr.log_f(p, q, a, ctx, table)
                assert (lf < 0) == (ratio > inv_c)
                # and the identity log f = log(1/C) - log(ratio-ish) holds:
                assert abs(lf - (mp.log(inv_c) - mp.log(ratio))) < 1e-12


# -- truncated K integral ----------------------------------------------------


def test_k_truncated_against_quadrature(ctx, table):
    """Piecewise-exact integral of S(t) g(t) vs adaptive quadrature with
    step points listed as singularities."""
    q, a, x, T = 3, 1, 10, 500
    st = stats(q, a, table)
    pts = [x] + [p for p in st.pbar if x < p <= T] + [T]
    with ctx.workprec():
        direct = mp.quad(lambda t: st.S(t) * cr.g(t), pts)
    val = cr.k_truncated(x, T, q, a, ctx, table)
    assert abs(val.value - direct) < 1e-12
    assert val.tail_estimate > 0


def test_k_truncated_mertens_identity(ctx, table):
    """sum 1/pbar = S/(x log x) + loglog(x)/phi - K + M: with K truncated at
    T near the sieve limit the drift is below the heuristic tail estimate."""
    q, a = 4, 1
    st = stats(q, a, table)
    mc = mertens_C(q, a, ctx)
    x = 10_001
    T = 1_999_999
    kt = cr.k_truncated(x, T, q, a, ctx, table)
    with ctx.workprec():
        recip = mp.fsum(mp.mpf(1) / p for p in st.pbar if p <= x)
        rhs = (
            st.S(x) / (x * mp.log(x))
            + mp.log(mp.log(x)) / st.phi
            - (kt.value + 0)
            + mc.M.value
        )
        assert abs(recip - rhs) < 10 * kt.tail_estimate + 1e-6


def test_k_truncated_validations(ctx, table):
    with pytest.raises(ValueError):
        cr.k_truncated(100, 50, 3, 1, ctx, table)
    with pytest.raises(ValueError):
        cr.k_truncated(10, 10**9, 3, 1, ctx, table)


# -- J-hat bounds and p_q ----------------------------------------------------


def test_jhat_bounds(ctx):
    # absolute-aggregate bound is positive; both shrink like 1/(x log x)
    for q in (3, 8, 14):
        b1 = cr.jhat_bound(10**4, q, ctx)
        b2 = cr.jhat_bound(10**6, q, ctx)
        assert b1 > b2 > 0
    with pytest.raises(ValueError):
        cr.jhat_bound(10, 3, ctx)
    # signed variant can be negative (it is an upper bound, not a magnitude)
    assert cr.jhat_signed_bound(10**4, 3, ctx) < cr.jhat_bound(10**4, 3, ctx)


P_EXPECTED = {  # corrected values; print differs for 3, 6, 8, 12, 14
    3: "0.2669524",
    4: "0.2789234",
    5: "0.3956888",
    6: "0.2036587",
    7: "0.6354003",
    8: "0.6773711",
    9: "0.6305706",
    10: "0.3357980",
    12: "0.5823331",
    14: "0.5068062",
}


@pytest.mark.parametrize("q", list(P_EXPECTED))
def test_P_q(q, ctx):
    assert abs(cr.P_q(q, ctx) - mp.mpf(P_EXPECTED[q])) < 1e-6


def test_P_q_attained_at_left_endpoint(ctx):
    # p_q decreases from e^10 on for these moduli
    for q in (3, 7, 14):
        p_left = cr.p_q_of_x(mp.e**10, q, ctx)
        assert abs(cr.P_q(q, ctx) - p_left) < 1e-12
        assert cr.p_q_of_x(10**12, q, ctx) < p_left


def test_final_column_negative(ctx):
    for q in P_EXPECTED:
        bp = cr.bound_params(q, ctx)
        assert bp.F - mp.mpf("1.2") * bp.R + bp.P < 0


def test_grh_bound_negative_beyond_threshold(ctx):
    for q in (3, 7, 12):
        assert cr.grh_bound_check(q, 10**6, ctx) < 0
    with pytest.raises(ValueError):
        cr.grh_bound_check(3, 100, ctx)


# -- x_q and the sweep -------------------------------------------------------


XQ_PRINTED = {3: 6535, 4: 6285, 5: 39805, 6: 6535, 7: 78764, 8: 109133,
              9: 76312, 10: 39805, 12: 90720, 14: 75702}


def test_x_q_threshold_within_one(ctx):
    from totprog.reference_data import c1_of

    for q, printed in XQ_PRINTED.items():
        ours = cr.x_q_threshold(q, c1_of(q))
        assert abs(ours - printed) <= 1
    with pytest.raises(ValueError):
        cr.x_q_threshold(3, 0)


def test_x_q_exact_rational():
    # floor((2 * 1.798158 * 5/2)^4) computed without float rounding
    from fractions import Fraction

    v = (Fraction(2) * Fraction("1.798158") * Fraction(5, 2)) ** 4
    assert cr.x_q_threshold(3, "1.798158") == v.numerator // v.denominator


def test_empirical_xq_check(ctx, table):
    rep = cr.empirical_xq_check(3, 10**8, ctx, table)
    assert rep.holds and rep.first_violation is None
    rep5 = cr.empirical_xq_check(5, 10**8, ctx, table)
    assert rep5.holds


@pytest.mark.parametrize("q", [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14])
def test_sweep_all_negative(q, ctx, table):
    rep = cr.sweep(q, 1, ctx, table)
    assert rep.verdict == "all negative"
    assert rep.max_log_f < 0
    assert -rep.max_log_f > rep.error_budget
    assert rep.x_max >= 22027
    assert rep.checked > 0


def test_sweep_detects_violation(ctx, table):
    rep = cr.sweep(7, 3, ctx, table)  # nonsquare residue: f exceeds 1
    assert rep.verdict == "violation"


def test_precision_doubling_stability(table):
    lo, hi = PrecisionContext(prec=128), PrecisionContext(prec=256)
    for q in (5, 12):
        a, b = cr.bound_params(q, lo), cr.bound_params(q, hi)
        assert abs(a.P - b.P) < 1e-12
        assert abs(a.F - b.F) < 1e-25
        assert a.x_q == b.x_q
    assert abs(cr.log_f(1000, 3, 1, lo, table) - cr.log_f(1000, 3, 1, hi, table)) < 1e-25
