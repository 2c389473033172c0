"""Numerical theta evaluation: oracles at doubled precision, involution
self-consistency, hauptmodul residuals, the differential relation."""

import pytest
from mpmath import mp, mpf

from cubictheta import qexp, thetanum
from cubictheta.thetanum import Precision

PREC20 = Precision(40, 1e-20)
PREC12 = Precision(40, 1e-12)


def brute_theta_value(kind, q, dps):
    """Direct lattice summation at elevated precision; independent oracle."""
    with mp.workdps(dps):
        qq = mp.mpmathify(q)
        terms = int(dps * mp.log(10) / (-mp.log(qq))) + 10
        if kind == "c":
            grid = qexp._counts_shifted(3 * terms + 1)
            third = mpf(1) / 3
            return +sum(
                grid[e] * qq ** (mpf(e) / 3 + 0 * third)
                for e in range(len(grid))
                if grid[e]
            )
        c0, c1, c2 = qexp._counts_hexagonal(terms)
        if kind == "a":
            co = [c0[m] + c1[m] + c2[m] for m in range(terms + 1)]
        else:
            co = [c0[m] - c1[m] for m in range(terms + 1)]
        return +sum(co[m] * qq ** m for m in range(terms + 1))


def test_precision_invariants():
    with pytest.raises(ValueError):
        Precision(14, 1e-2)
    with pytest.raises(ValueError):
        Precision(20, 1e-15)  # fewer than 10 guard digits
    assert Precision(40, 1e-20).dps == 40


def test_domain_errors():
    for bad in (0, 1, -0.5, 1.5):
        with pytest.raises(ValueError):
            thetanum.eval_theta("a", bad, PREC12)
    with pytest.raises(ValueError):
        thetanum.eval_theta("zeta", 0.5, PREC12)


def test_small_q_limits():
    with mp.workdps(45):
        q = mpf("1e-8")
        assert abs(thetanum.eval_theta("a", q, PREC12) - 1) < 1e-7
        assert abs(thetanum.eval_theta("b", q, PREC12) - 1) < 1e-7
        # c ~ 3 q^(1/3)
        c = thetanum.eval_theta("c", q, PREC12)
        assert abs(c - 3 * q ** (mpf(1) / 3)) < 1e-7


def test_a_at_point_one_vs_oracle():
    # involution-path value against a 60-digit direct-sum oracle
    with mp.workdps(60):
        want = brute_theta_value("a", "0.1", 60)
        got = thetanum.eval_theta("a", "0.1", PREC20)
        assert abs(got - want) < mpf("1e-20")


def test_b_c_involution_fixed_point():
    with mp.workdps(55):
        qstar = mp.exp(-2 * mp.pi / mp.sqrt(3))
        b = thetanum.eval_theta("b", qstar, PREC20)
        c = thetanum.eval_theta("c", qstar, PREC20)
        assert abs(b - c) < mpf("1e-20")


def test_alpha_limits_and_fixed_point():
    with mp.workdps(55):
        assert thetanum.alpha_of_q("1e-6", PREC12) < 1e-3
        assert thetanum.alpha_of_q("0.999", PREC12) > 1 - 1e-3
        qstar = mp.exp(-2 * mp.pi / mp.sqrt(3))
        assert abs(thetanum.alpha_of_q(qstar, PREC20) - mpf(1) / 2) < mpf("1e-20")


def test_alpha_pair_sums_to_one():
    with mp.workdps(55):
        al, comp = thetanum.alpha_pair("0.37", PREC20)
        assert abs(al + comp - 1) < mpf("1e-35")


def test_theta_point_invariants():
    with mp.workdps(55):
        pt = thetanum.theta_point("0.2", PREC20)
        assert pt.a > 0 and pt.b > 0 and pt.c > 0
        assert 0 < pt.alpha < 1
        assert abs(pt.a ** 3 - pt.b ** 3 - pt.c ** 3) < mpf("1e-18") * pt.a ** 3
        assert abs(pt.q - mp.exp(-2 * mp.pi * pt.u)) < mpf("1e-30")


def test_f_integrand_large_u_asymptote():
    # leading coefficients give b -> 1, c(q^3) -> 3 q
    with mp.workdps(45):
        u = mpf(3)
        val = thetanum.f_integrand(u, PREC12)
        lead = 3 * mp.exp(-2 * mp.pi * u)
        assert abs(val / lead - 1) < 1e-6


def test_f_integrand_direct_vs_involution_formula():
    # u = 0.5 sits in the involution regime but both routes converge
    with mp.workdps(55):
        u = mpf("0.5")
        tol = mpf("1e-44")
        direct = (
            thetanum._theta_direct("b", mp.exp(-2 * mp.pi * u), tol) ** 2
            * thetanum._theta_direct("c", mp.exp(-6 * mp.pi * u), tol)
        )
        via = thetanum.f_integrand(u, Precision(40, 1e-25))
        assert abs(direct - via) < mpf("1e-25")


def test_f_integrand_vanishes_at_zero():
    with mp.workdps(45):
        assert thetanum.f_integrand(mpf("0.01"), PREC12) < mpf("1e-30")
    with pytest.raises(ValueError):
        thetanum.f_integrand(0, PREC12)


def test_eta_involution_consistency():
    with mp.workdps(55):
        tol = mpf("1e-42")
        for u in (mpf("0.8"), mpf("1.25")):
            lhs = thetanum._theta_direct("eta", mp.exp(-2 * mp.pi * u), tol)
            rhs = thetanum._theta_direct("eta", mp.exp(-2 * mp.pi / u), tol) / mp.sqrt(u)
            assert abs(lhs - rhs) < mpf("1e-38")
        via = thetanum.eval_theta("eta", mp.exp(-2 * mp.pi * mpf("0.5")), PREC20)
        direct = thetanum._theta_direct("eta", mp.exp(-2 * mp.pi * mpf("0.5")), tol)
        assert abs(via - direct) < mpf("1e-20")


def test_hauptmodul_residual_spot_checks():
    with mp.workdps(55):
        for q in ("0.05", "0.5"):
            assert abs(thetanum.residual_hauptmodul(q, PREC20)) < mpf("1e-20")


def test_differential_relation_ratio_and_residual():
    with mp.workdps(55):
        errs, resid = thetanum.differential_residual("0.1", PREC12)
        ratios = [errs[i] / errs[i + 1] for i in range(len(errs) - 1)]
        for r in ratios:
            assert 3.3 < r < 4.7
        assert resid < mpf("1e-12")


def test_qexp_truncation_consistency():
    # numeric evaluator vs exact order-120 truncation, within the tail bound
    order = 120
    with mp.workdps(55):
        for kind in ("a", "b", "c"):
            series = qexp.theta_series(kind, order)
            q = mpf("0.15")
            acc = mpf(0)
            q3 = q ** (mpf(1) / series.d)
            for e in range(series.order, -1, -1):
                acc = acc * q3 + series.coeffs[e]
            tail = 12 * (order + 3) * q ** (order + 1) / (1 - q) ** 2
            val = thetanum.eval_theta(kind, q, PREC20)
            assert abs(val - acc) <= tail + mpf("1e-20")
