"""Dense-series kernels with a compiled fast path.

``conv_trunc`` and ``div_unit`` are the hot inner loops of every exact
identity check.  At import time the Cython extension is preferred; the
pure-Python twins below implement the same contracts and are kept
importable on their own so the two backends can be benchmarked and
cross-tested.
"""

from __future__ import annotations

__all__ = ["conv_trunc", "div_unit", "py_conv_trunc", "py_div_unit", "BACKEND"]


def py_conv_trunc(a: list, b: list, order: int, allint: bool = True) -> list:
    """Cauchy product of coefficient lists, truncated to ``order``.

    Exact for int and Fraction coefficients alike; ``allint`` is a routing
    hint used by the compiled backend and ignored here.
    """
    n = order + 1
    na = min(len(a), n)
    nb = min(len(b), n)
    out = [0] * n
    for i in range(na):
        ai = a[i]
        if ai == 0:
            continue
        hi = min(n - i, nb)
        for j in range(hi):
            bj = b[j]
            if bj != 0:
                out[i + j] += ai * bj
    return out


def py_div_unit(num: list, den: list, order: int) -> list:
    """Series quotient num/den truncated to ``order``; requires den[0] == 1."""
    if not den or den[0] != 1:
        raise ValueError("div_unit requires den[0] == 1")
    n = order + 1
    out = [0] * n
    dnz = [(k, den[k]) for k in range(1, min(len(den), n)) if den[k] != 0]
    for m in range(n):
        s = num[m] if m < len(num) else 0
        for k, dk in dnz:
            if k > m:
                break
            s -= dk * out[m - k]
        out[m] = s
    return out


try:
    from ._speedups import conv_trunc, div_unit  # type: ignore[attr-defined]

    BACKEND = "c"
except ImportError:  # pragma: no cover - depends on build environment
    conv_trunc = py_conv_trunc
    div_unit = py_div_unit
    BACKEND = "python"
