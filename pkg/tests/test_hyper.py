"""Hypergeometric evaluators: exact term recurrences, closed-form anchors,
near-unit expansions against mpmath, double-series routes, quadrature."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import hyp2f1, mp, mpf

from cubictheta import hyper
from cubictheta.hyper import KdFParams, PFQParams
from cubictheta.thetanum import Precision

PREC = Precision(40, 1e-30)
THIRD = Fraction(1, 3)

MAIN_BLOCK = KdFParams([1], [2], [1, Fraction(4, 3)], [2], [THIRD, 2 * THIRD], [1])


# -- pochhammer ---------------------------------------------------------------


def test_pochhammer_values():
    assert hyper.pochhammer(Fraction(5, 7), 0) == 1
    assert hyper.pochhammer(1, 5) == 120
    assert hyper.pochhammer(THIRD, 2) == Fraction(4, 9)
    with pytest.raises(ValueError):
        hyper.pochhammer(1, -1)


@settings(max_examples=25)
@given(
    st.fractions(min_value=-3, max_value=3, max_denominator=6),
    st.integers(0, 50),
)
def test_recurrence_matches_pochhammer_exactly(a, n):
    """Term recurrence versus directly assembled Pochhammer ratios, in
    exact rational arithmetic."""
    upper = (a + Fraction(1, 5), Fraction(3, 2))
    lower = (Fraction(7, 3),)
    x = Fraction(2, 7)
    by_recurrence = Fraction(1)
    terms = [by_recurrence]
    for k in range(n):
        num = Fraction(1)
        for u in upper:
            num *= u + k
        for l in lower:
            num /= l + k
        by_recurrence *= num * x / (k + 1)
        terms.append(by_recurrence)
    direct = (
        hyper.pochhammer(upper[0], n)
        * hyper.pochhammer(upper[1], n)
        / hyper.pochhammer(lower[0], n)
        * x ** n
        / hyper.pochhammer(Fraction(1), n)
    )
    assert terms[n] == direct


# -- pfq ------------------------------------------------------------------------


def test_pfq_collapses_to_geometric():
    res = hyper.pfq(PFQParams([1, 2], [2]), Fraction(1, 2), PREC)
    assert abs(res.value - 2) < mpf("1e-30")


def test_pfq_binomial_closed_form():
    res = hyper.pfq(PFQParams([THIRD], []), Fraction(1, 2), PREC)
    with mp.workdps(50):
        assert abs(res.value - mpf(2) ** (mpf(1) / 3)) < mpf("1e-30")


def test_pfq_geom_identity_point():
    res = hyper.pfq(PFQParams([1, Fraction(4, 3)], [2]), Fraction(1, 2), PREC)
    with mp.workdps(50):
        want = 3 * ((1 - mpf("0.5")) ** (-mpf(1) / 3) - 1) / mpf("0.5")
        assert abs(res.value - want) < mpf("1e-30")


def test_pfq_domain_errors():
    with pytest.raises(ValueError):
        hyper.pfq(PFQParams([1, 1, 2], [2]), 2, PREC)  # |x| > 1
    with pytest.raises(ValueError):
        hyper.pfq(PFQParams([1, Fraction(4, 3)], [2]), 1, PREC)  # divergent at 1
    with pytest.raises(ValueError):
        PFQParams([1], [0])  # nonpositive integer lower parameter


def test_pfq_at_one_gauss():
    res = hyper.pfq(PFQParams([THIRD, Fraction(1, 4)], [2]), 1, PREC)
    with mp.workdps(50):
        want = (
            mp.gamma(2) * mp.gamma(2 - mpf(1) / 3 - mpf(1) / 4)
            / (mp.gamma(2 - mpf(1) / 3) * mp.gamma(2 - mpf(1) / 4))
        )
        assert abs(res.value - want) < mpf("1e-30")


def test_pfq_at_one_ones_pattern():
    res = hyper.pfq(PFQParams([1, 1, Fraction(4, 3)], [2, 2]), 1, PREC)
    with mp.workdps(50):
        want = 3 * (mp.psi(0, 1) - mp.psi(0, mpf(2) / 3))
        assert abs(res.value - want) < mpf("1e-30")


def test_pfq_at_one_accelerated_generic():
    # 3F2 with excess 1 and no closed-form pattern; mpmath is the oracle
    from mpmath import hyper as mp_hyper

    res = hyper.pfq(
        PFQParams([Fraction(1, 2), Fraction(3, 4), 1], [Fraction(5, 4), 2]), 1,
        Precision(30, 1e-15),
    )
    assert res.method == "accelerated"
    with mp.workdps(40):
        want = mp_hyper([mpf(1) / 2, mpf(3) / 4, 1], [mpf(5) / 4, 2], 1)
        assert abs(res.value - want) < mpf("1e-15")


def test_zero_balanced_against_mpmath():
    with mp.workdps(45):
        for z in ("0.6", "0.9", "0.995"):
            zz = mpf(z)
            got = hyper.gauss_2f1_unit_interval(THIRD, 2 * THIRD, 1, zz, 1 - zz, 40)
            want = hyp2f1(mpf(1) / 3, mpf(2) / 3, 1, zz)
            assert abs(got - want) < mpf("1e-35")


def test_zero_balanced_matches_direct_summation():
    with mp.workdps(45):
        z = mpf("0.55")
        got = hyper.gauss_2f1_unit_interval(THIRD, 2 * THIRD, 1, z, 1 - z, 40)
        direct, _ = hyper._pfq_direct([mpf(1) / 3, mpf(2) / 3], [mpf(1)], z, mpf("1e-45"))
        assert abs(got - direct) < mpf("1e-38")


def test_connection_formula_against_mpmath():
    with mp.workdps(45):
        z = mpf("0.93")
        eps = mpf("1e-42")
        got, _ = hyper._hyp2f1_connection(
            Fraction(1, 5), Fraction(1, 2), Fraction(9, 4), z, 1 - z, eps
        )
        want = hyp2f1(mpf(1) / 5, mpf(1) / 2, mpf(9) / 4, z)
        assert abs(got - want) < mpf("1e-35")


def test_f32_pattern_against_direct():
    with mp.workdps(45):
        eps = mpf("1e-42")
        for z in (mpf("0.6"), mpf("0.9")):
            got, _ = hyper._f32_ones_tail(THIRD, z, 1 - z, eps)
            direct, _ = hyper._pfq_direct(
                [mpf(1), mpf(1), mpf(4) / 3], [mpf(2), mpf(2)], z, eps
            )
            assert abs(got - direct) < mpf("1e-33")


# -- margins ------------------------------------------------------------------------


def test_margins_main_block():
    m = hyper.kdf_margins(MAIN_BLOCK)
    assert (m.m1, m.m2, m.m3) == (Fraction(2, 3), Fraction(1), Fraction(2, 3))
    assert m.boundary_ok


def test_margins_sign_bookkeeping():
    # primed sums equal on the joint and first-variable side: the extra
    # upper parameter makes m1 negative
    p = KdFParams([1], [1], [1, Fraction(1, 2)], [1], [THIRD, 2 * THIRD], [1])
    m = hyper.kdf_margins(p)
    assert m.m1 == Fraction(-1, 2)
    assert not m.boundary_ok


def test_margins_weight3_first_block():
    p = KdFParams([THIRD], [Fraction(4, 3)], [THIRD, 1], [Fraction(4, 3)],
                  [THIRD, 2 * THIRD], [1])
    m = hyper.kdf_margins(p)
    assert min(m.m1, m.m2, m.m3) > 0


# -- kdf series/integral ----------------------------------------------------------------


def test_kdf_at_origin():
    res = hyper.kdf_series(MAIN_BLOCK, 0, 0, PREC)
    assert abs(res.value - 1) < mpf("1e-30")


def test_kdf_collapses_to_pfq():
    res = hyper.kdf_series(MAIN_BLOCK, Fraction(2, 5), 0, PREC)
    merged = hyper.pfq(PFQParams([1, 1, Fraction(4, 3)], [2, 2]), Fraction(2, 5), PREC)
    assert abs(res.value - merged.value) < mpf("1e-28")


def test_kdf_empty_second_block():
    p = KdFParams([1], [2], [1, Fraction(4, 3)], [2], [], [])
    res = hyper.kdf_series(p, Fraction(1, 3), 0, PREC)
    merged = hyper.pfq(PFQParams([1, 1, Fraction(4, 3)], [2, 2]), Fraction(1, 3), PREC)
    assert abs(res.value - merged.value) < mpf("1e-28")


def test_kdf_symmetry_swap():
    with mp.workdps(50):
        a = hyper.kdf_series(MAIN_BLOCK, Fraction(1, 3), Fraction(2, 3), PREC)
        b = hyper.kdf_series(MAIN_BLOCK.swapped(), Fraction(2, 3), Fraction(1, 3), PREC)
        assert abs(a.value - b.value) < mpf("1e-28")


def test_kdf_routes_agree_interior():
    with mp.workdps(50):
        half = Fraction(1, 2)
        s = hyper.kdf_series(MAIN_BLOCK, half, half, PREC)
        i = hyper.kdf_integral(MAIN_BLOCK, half, half, PREC)
        assert abs(s.value - i.value) < mpf("1e-15")


def test_kdf_boundary_requires_margins():
    bad = KdFParams([1], [1], [1, Fraction(1, 2)], [1], [THIRD, 2 * THIRD], [1])
    with pytest.raises(ValueError, match="margins"):
        hyper.kdf_series(bad, 1, 1, PREC)


def test_kdf_boundary_requires_shape():
    lopsided = KdFParams([1], [2], [1, 1, Fraction(4, 3)], [2], [THIRD], [1])
    with pytest.raises(ValueError, match="unsupported shape"):
        hyper.kdf_series(lopsided, 1, 1, PREC)


def test_kdf_integral_preconditions():
    two_joint = KdFParams([1, 1], [2, 2], [1], [2], [1], [2])
    with pytest.raises(ValueError):
        hyper.kdf_integral(two_joint, 0, 0, PREC)
    reversed_pair = KdFParams([2], [1], [1], [2], [1], [2])
    with pytest.raises(ValueError):
        hyper.kdf_integral(reversed_pair, 0, 0, PREC)


def test_kdf_integral_at_origin():
    res = hyper.kdf_integral(MAIN_BLOCK, 0, 0, Precision(30, 1e-18))
    assert abs(res.value - 1) < mpf("1e-18")


def test_pfq_geom_pattern_negative_argument():
    with mp.workdps(50):
        x = mpf("-0.97")
        res = hyper.pfq(PFQParams([1, Fraction(4, 3)], [2]), x, Precision(40, 1e-30))
        want = 3 * ((1 - x) ** (-mpf(1) / 3) - 1) / x
        assert abs(res.value - want) < mpf("1e-30")


def test_kdf_boundary_negative_x():
    # alternating first-variable block at the boundary corner (-1, 1)
    with mp.workdps(55):
        s = hyper.kdf_series(MAIN_BLOCK, -1, 1, Precision(40, 1e-12))
        i = hyper.kdf_integral(MAIN_BLOCK, -1, 1, Precision(40, 1e-12))
        assert abs(s.value - i.value) <= s.err_estimate + i.err_estimate


def test_kdf_boundary_smoke():
    # boundary value of the first block: reference derived from the integral
    # route at higher precision in the acceptance suite; here route agreement
    with mp.workdps(55):
        s = hyper.kdf_series(MAIN_BLOCK, 1, 1, Precision(40, 1e-12))
        i = hyper.kdf_integral(MAIN_BLOCK, 1, 1, Precision(40, 1e-12))
        assert abs(s.value - i.value) <= s.err_estimate + i.err_estimate
        assert s.err_estimate < mpf("1e-8")


# -- quadrature ---------------------------------------------------------------------------


def test_quad_de_constant():
    res = hyper.quad_de(lambda t: mpf(1), mpf("1e-25"), PREC)
    assert abs(res.value - 1) < mpf("1e-25")


def test_quad_de_endpoint_singularity():
    res = hyper.quad_de(lambda t: (1 - t) ** (-mpf(1) / 3), mpf("1e-25"), PREC)
    assert abs(res.value - mpf(3) / 2) < mpf("1e-25")
    assert res.err_estimate <= mpf("1e-25")


def test_quad_de_beta_form():
    res = hyper.quad_de(
        lambda t: t ** (mpf(1) / 3) / (t * (1 - t)) * (1 - t), mpf("1e-25"), PREC
    )
    assert abs(res.value - 3) < mpf("1e-25")


def test_quad_de_error_estimates_conservative():
    with mp.workdps(55):
        cases = (
            (lambda t: mp.exp(t), mp.e - 1),
            (lambda t: mp.log(t), mpf(-1)),
        )
        for f, want in cases:
            res = hyper.quad_de(f, mpf("1e-20"), PREC)
            assert abs(res.value - want) <= res.err_estimate + mpf("1e-21")


def test_quad_de_rejects_nonintegrable():
    with pytest.raises(ArithmeticError):
        hyper.quad_de(lambda t: 1 / t, mpf("1e-20"), Precision(30, 1e-15), max_level=6)


# -- integral representation ------------------------------------------------------------


def test_hginterep_reduces_to_beta_at_zero():
    rep = hyper.check_hginterep(
        PFQParams([THIRD, 1], [Fraction(4, 3)]), 0, Precision(40, 1e-12)
    )
    assert rep.passed
    with mp.workdps(50):
        want = mp.beta(mpf(1) / 3, 1)
        assert abs(rep.lhs - want) < mpf("1e-12")


def test_hginterep_both_parameter_sets():
    for params in (
        PFQParams([THIRD, 1], [Fraction(4, 3)]),
        PFQParams([2 * THIRD, 1], [Fraction(5, 3)]),
    ):
        rep = hyper.check_hginterep(params, mpf("0.5"), Precision(40, 1e-12))
        assert rep.passed, rep.abs_err


def test_hginterep_precondition():
    with pytest.raises(ValueError):
        hyper.check_hginterep(PFQParams([2, 1], [Fraction(4, 3)]), 0.5, PREC)
