#!/usr/bin/env python3
"""Benchmark the compiled series kernels against the pure-Python fallback.

Times the truncated Cauchy product and the unit-series division on
theta-series-like integer data at several orders, then the full exact
identity suite through both backends.

Run:  python benchmarks/bench_kernels.py
"""

import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from cubictheta import kernels, qexp  # noqa: E402


def _time(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_conv():
    print(f"compiled backend available: {kernels.BACKEND == 'c'}")
    print()
    print("conv_trunc (dense integer Cauchy product)")
    print(f"{'order':>8} {'pure (s)':>12} {'compiled (s)':>12} {'speedup':>9}")
    for order in (300, 1000, 3000, 6000):
        a = qexp.theta_series("b", order).coeffs
        b = qexp.theta_series("a", order).coeffs
        t_py = _time(kernels.py_conv_trunc, a, b, order)
        if kernels.BACKEND == "c":
            t_c = _time(kernels.conv_trunc, a, b, order)
            print(f"{order:>8} {t_py:>12.4f} {t_c:>12.4f} {t_py / t_c:>8.1f}x")
        else:
            print(f"{order:>8} {t_py:>12.4f} {'-':>12} {'-':>9}")


def bench_div():
    print()
    print("div_unit (series division by a pentagonal-number series)")
    print(f"{'order':>8} {'pure (s)':>12} {'compiled (s)':>12} {'speedup':>9}")
    for order in (1000, 4000, 8000):
        num = qexp.theta_series("a", order).coeffs
        den = qexp._euler_coeffs(order)
        t_py = _time(kernels.py_div_unit, num, den, order)
        if kernels.BACKEND == "c":
            t_c = _time(kernels.div_unit, num, den, order)
            print(f"{order:>8} {t_py:>12.4f} {t_c:>12.4f} {t_py / t_c:>8.1f}x")
        else:
            print(f"{order:>8} {t_py:>12.4f} {'-':>12} {'-':>9}")


def bench_exact_suite():
    from cubictheta import cli

    print()
    print("full exact identity suite, order 500")
    saved = (kernels.conv_trunc, kernels.div_unit, kernels.BACKEND)
    try:
        kernels.conv_trunc = kernels.py_conv_trunc
        kernels.div_unit = kernels.py_div_unit
        t0 = time.perf_counter()
        assert all(r.passed for r in cli.exact_suite_reports(500))
        t_py = time.perf_counter() - t0
    finally:
        kernels.conv_trunc, kernels.div_unit, kernels.BACKEND = saved
    print(f"  pure python: {t_py:.2f}s")
    if kernels.BACKEND == "c":
        t0 = time.perf_counter()
        assert all(r.passed for r in cli.exact_suite_reports(500))
        t_c = time.perf_counter() - t0
        print(f"  compiled:    {t_c:.2f}s  ({t_py / t_c:.1f}x)")


if __name__ == "__main__":
    bench_conv()
    bench_div()
    bench_exact_suite()
