# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for dense truncated power-series arithmetic.

Coefficients are Python ints.  Products whose magnitudes provably fit in
int64 run in a tight C loop; everything else falls back to a typed loop
over Python objects, which is still exact.
"""

from libc.stdlib cimport free, malloc

__all__ = ["conv_trunc", "div_unit", "BACKEND"]

BACKEND = "c"

cdef long long _INT64_GUARD = (<long long> 1) << 62


def _max_abs(list v):
    cdef Py_ssize_t i, n = len(v)
    m = 0
    for i in range(n):
        x = v[i]
        if x < 0:
            x = -x
        if x > m:
            m = x
    return m


def conv_trunc(list a, list b, Py_ssize_t order, bint allint=True):
    """Cauchy product of coefficient lists, truncated to ``order``."""
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef Py_ssize_t n = order + 1
    if na > n:
        na = n
    if nb > n:
        nb = n
    cdef Py_ssize_t shorter = na if na < nb else nb
    if allint:
        ma = _max_abs(a[:na])
        mb = _max_abs(b[:nb])
        if ma and mb and ma * mb * shorter < _INT64_GUARD:
            return _conv_i64(a, b, na, nb, n)
    return _conv_obj(a, b, na, nb, n)


cdef _conv_i64(list a, list b, Py_ssize_t na, Py_ssize_t nb, Py_ssize_t n):
    cdef long long * ca = <long long *> malloc(na * sizeof(long long))
    cdef long long * cb = <long long *> malloc(nb * sizeof(long long))
    cdef long long * out = <long long *> malloc(n * sizeof(long long))
    if ca == NULL or cb == NULL or out == NULL:
        free(ca); free(cb); free(out)
        raise MemoryError
    cdef Py_ssize_t i, j, hi
    cdef long long ai
    try:
        for i in range(na):
            ca[i] = a[i]
        for i in range(nb):
            cb[i] = b[i]
        for i in range(n):
            out[i] = 0
        for i in range(na):
            ai = ca[i]
            if ai == 0:
                continue
            hi = n - i
            if hi > nb:
                hi = nb
            for j in range(hi):
                out[i + j] += ai * cb[j]
        return [out[i] for i in range(n)]
    finally:
        free(ca); free(cb); free(out)


cdef _conv_obj(list a, list b, Py_ssize_t na, Py_ssize_t nb, Py_ssize_t n):
    cdef list out = [0] * n
    cdef Py_ssize_t i, j, hi
    for i in range(na):
        ai = a[i]
        if ai == 0:
            continue
        hi = n - i
        if hi > nb:
            hi = nb
        for j in range(hi):
            out[i + j] = out[i + j] + ai * b[j]
    return out


def div_unit(list num, list den, Py_ssize_t order):
    """Series quotient num/den truncated to ``order``; requires den[0] == 1."""
    if not den or den[0] != 1:
        raise ValueError("div_unit requires den[0] == 1")
    cdef Py_ssize_t n = order + 1
    cdef list out = [0] * n
    cdef list dnz_i = []
    cdef list dnz_v = []
    cdef Py_ssize_t k, m, i
    for k in range(1, min(len(den), n)):
        if den[k] != 0:
            dnz_i.append(k)
            dnz_v.append(den[k])
    cdef Py_ssize_t nd = len(dnz_i)
    for m in range(n):
        s = num[m] if m < len(num) else 0
        for i in range(nd):
            k = dnz_i[i]
            if k > m:
                break
            s = s - dnz_v[i] * out[m - k]
        out[m] = s
    return out
