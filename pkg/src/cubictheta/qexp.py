"""Exact truncated q-series arithmetic and the classical series constructions.

Everything here is exact: coefficients are Python ints or Fractions, and an
identity "holds to order N" means every tracked coefficient of the difference
vanishes.  Series live on an exponent grid e/d with d in {1, 3}; the d = 3
grid carries the cube-root exponents of the shifted theta series c(q) and of
the weighted Lambert sum E0.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import kernels

__all__ = [
    "QSeries",
    "chi3",
    "theta_series",
    "eta_quotient",
    "lambert_series",
    "f_coefficients",
    "mul",
    "substitute_power",
    "q_differentiate",
    "dump_lines",
]


def chi3(n: int) -> int:
    """The odd primitive Dirichlet character of conductor 3."""
    return (0, 1, -1)[n % 3]


class QSeries:
    """Dense truncated power series in q**(1/d) with exact coefficients.

    ``coeffs[e]`` is the coefficient of q**(e/d); entries are tracked for
    0 <= e <= order and unknown beyond.  Instances are immutable.
    """

    __slots__ = ("d", "coeffs", "_allint")

    def __init__(self, d: int, coeffs: list):
        if d not in (1, 3):
            raise ValueError(f"unsupported exponent denominator {d}")
        if not coeffs:
            raise ValueError("empty coefficient list")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "coeffs", list(coeffs))
        object.__setattr__(
            self, "_allint", all(type(c) is int for c in self.coeffs)
        )

    def __setattr__(self, *_):
        raise AttributeError("QSeries is immutable")

    # -- basic accessors -------------------------------------------------

    @property
    def order(self) -> int:
        """Largest tracked grid exponent e."""
        return len(self.coeffs) - 1

    @property
    def qorder(self) -> Fraction:
        """Largest tracked exponent as a power of q."""
        return Fraction(self.order, self.d)

    def coefficient(self, e: int):
        """Coefficient of q**(e/d); raises beyond the tracked order."""
        if e < 0 or e > self.order:
            raise ValueError(f"exponent index {e} outside tracked range")
        return self.coeffs[e]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self):
        head = ", ".join(
            f"q^({e}/{self.d})*{c}" for e, c in enumerate(self.coeffs[:4]) if c
        )
        return f"QSeries(d={self.d}, order={self.order}, {head or '0'}, ...)"

    # -- grid management -------------------------------------------------

    def lift(self, d_new: int) -> "QSeries":
        """Rewrite on a finer grid (1 -> 3) without changing the series."""
        if d_new == self.d:
            return self
        if not (self.d == 1 and d_new == 3):
            raise ValueError(f"cannot lift d={self.d} to d={d_new}")
        out = [0] * (3 * self.order + 1)
        for e, c in enumerate(self.coeffs):
            out[3 * e] = c
        return QSeries(3, out)

    def reduce(self) -> "QSeries":
        """Drop to d = 1 when every nonzero exponent is integral."""
        if self.d == 1:
            return self
        if any(c != 0 and e % 3 for e, c in enumerate(self.coeffs)):
            return self
        return QSeries(1, [self.coeffs[3 * m] for m in range(self.order // 3 + 1)])

    @staticmethod
    def _unify(a: "QSeries", b: "QSeries"):
        if a.d != b.d:
            a, b = a.lift(3), b.lift(3)
        n = min(a.order, b.order)
        return a, b, n

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "QSeries") -> "QSeries":
        a, b, n = self._unify(self, other)
        return QSeries(a.d, [a.coeffs[e] + b.coeffs[e] for e in range(n + 1)])

    def __sub__(self, other: "QSeries") -> "QSeries":
        a, b, n = self._unify(self, other)
        return QSeries(a.d, [a.coeffs[e] - b.coeffs[e] for e in range(n + 1)])

    def __neg__(self) -> "QSeries":
        return QSeries(self.d, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, QSeries):
            a, b, n = self._unify(self, other)
            allint = a._allint and b._allint
            return QSeries(a.d, kernels.conv_trunc(a.coeffs, b.coeffs, n, allint))
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, s) -> "QSeries":
        """Multiply every coefficient by the exact scalar ``s``."""
        if not isinstance(s, (int, Fraction)):
            raise TypeError("scalars must be int or Fraction")
        return QSeries(self.d, [c * s for c in self.coeffs])

    def exact_div(self, s: int) -> "QSeries":
        """Divide by an integer, keeping int coefficients when possible."""
        out = []
        for c in self.coeffs:
            if type(c) is int and c % s == 0:
                out.append(c // s)
            else:
                out.append(Fraction(c, s) if type(c) is int else c / s)
        return QSeries(self.d, out)

    def __pow__(self, k: int) -> "QSeries":
        if not isinstance(k, int) or k < 1:
            raise ValueError("only positive integer powers")
        r = self
        for _ in range(k - 1):
            r = r * self
        return r

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b, n = self._unify(self, other)
        return a.coeffs[: n + 1] == b.coeffs[: n + 1]

    __hash__ = None

    # -- substitutions and differentiation --------------------------------

    def substitute_power(self, k: int) -> "QSeries":
        """q -> q**k; exponent e/d -> ke/d, order scales by k."""
        if not isinstance(k, int) or k < 1:
            raise ValueError("substitution power must be a positive integer")
        if k == 1:
            return self
        out = [0] * (k * self.order + 1)
        for e, c in enumerate(self.coeffs):
            out[k * e] = c
        return QSeries(self.d, out).reduce()

    def substitute_root(self, m: int) -> "QSeries":
        """q -> q**(1/m) by a denominator change (only 1 -> 3 supported)."""
        if m == 1:
            return self
        if m != 3 or self.d != 1:
            raise ValueError("only q -> q^(1/3) from the integer grid is supported")
        return QSeries(3, list(self.coeffs))

    def q_differentiate(self) -> "QSeries":
        """Apply q d/dq: the coefficient of q**(e/d) picks up a factor e/d."""
        out = []
        for e, c in enumerate(self.coeffs):
            if e % self.d == 0:
                out.append(c * (e // self.d))
            else:
                out.append(c * Fraction(e, self.d))
        return QSeries(self.d, out)


# -- module-level operation aliases ---------------------------------------


def mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def substitute_power(a: QSeries, k: int) -> QSeries:
    return a.substitute_power(k)


def q_differentiate(a: QSeries) -> QSeries:
    return a.q_differentiate()


# -- lattice enumeration ---------------------------------------------------

_NUMPY_CUTOFF = 20_000


def _counts_hexagonal(n: int):
    """Counts of x*x + x*y + y*y = m split by (x - y) mod 3, for m <= n.

    The norm bound uses x*x + x*y + y*y >= (x*x + y*y)/2, so the box
    |x|, |y| <= ceil(sqrt(2n)) is provably exhaustive.
    """
    B = math.isqrt(2 * n) + 1
    c0 = [0] * (n + 1)
    c1 = [0] * (n + 1)
    c2 = [0] * (n + 1)
    if n > _NUMPY_CUTOFF:
        ys = np.arange(-B, B + 1, dtype=np.int64)
        buckets = (
            np.zeros(n + 1, dtype=np.int64),
            np.zeros(n + 1, dtype=np.int64),
            np.zeros(n + 1, dtype=np.int64),
        )
        for x in range(-B, B + 1):
            m = x * x + x * ys + ys * ys
            sel = m <= n
            ms = m[sel]
            cls = (x - ys[sel]) % 3
            for r in range(3):
                np.add.at(buckets[r], ms[cls == r], 1)
        return buckets[0].tolist(), buckets[1].tolist(), buckets[2].tolist()
    for x in range(-B, B + 1):
        xx = x * x
        for y in range(-B, B + 1):
            m = xx + x * y + y * y
            if m <= n:
                r = (x - y) % 3
                if r == 0:
                    c0[m] += 1
                elif r == 1:
                    c1[m] += 1
                else:
                    c2[m] += 1
    return c0, c1, c2


def _counts_shifted(n_grid: int):
    """Counts of shifted-lattice exponents 3M + 1 <= n_grid on the d=3 grid,
    M = x*x + x*y + y*y + x + y."""
    co = [0] * (n_grid + 1)
    Mmax = (n_grid - 1) // 3
    if Mmax < 0:
        return co
    B = math.isqrt(2 * Mmax + 2) + 2
    for x in range(-B, B + 1):
        base = x * x + x
        for y in range(-B, B + 1):
            e = 3 * (base + x * y + y * y + y) + 1
            if 0 <= e <= n_grid:
                co[e] += 1
    return co


def theta_series(kind: str, n: int) -> QSeries:
    """Cubic theta series to q-order ``n``: kinds 'a', 'b' (d=1), 'c' (d=3)."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    if kind == "a":
        c0, c1, c2 = _counts_hexagonal(n)
        return QSeries(1, [c0[m] + c1[m] + c2[m] for m in range(n + 1)])
    if kind == "b":
        c0, c1, c2 = _counts_hexagonal(n)
        if c1 != c2:
            raise AssertionError("residue classes of x - y mod 3 must balance")
        return QSeries(1, [c0[m] - c1[m] for m in range(n + 1)])
    if kind == "c":
        return QSeries(3, _counts_shifted(3 * n))
    raise ValueError(f"unknown theta kind {kind!r}")


# -- eta quotients ----------------------------------------------------------


def _euler_coeffs(n: int, step: int = 1) -> list:
    """Pentagonal-number expansion of prod_{m>=1} (1 - q**(step*m)) to order n."""
    co = [0] * (n + 1)
    co[0] = 1
    j = 1
    while True:
        g1 = step * j * (3 * j - 1) // 2
        g2 = step * j * (3 * j + 1) // 2
        if g1 > n and g2 > n:
            break
        s = -1 if j % 2 else 1
        if g1 <= n:
            co[g1] += s
        if g2 <= n:
            co[g2] += s
        j += 1
    return co


def eta_quotient(spec: list, n: int) -> QSeries:
    """Exact expansion of prod eta(q**d)**r to q-order ``n``.

    ``spec`` is a list of (delta, r) pairs.  The eta prefactors combine to
    q**(sum delta*r/24); the sum must be divisible by 8 so the exponent lands
    on the 1/3 grid, and must be nonnegative so the expansion has no pole.
    """
    s = sum(delta * r for delta, r in spec)
    if s % 8:
        raise ValueError("sum of delta*r must be divisible by 8 (exponent off the 1/3 grid)")
    p8 = s // 8  # leading exponent in units of 1/3
    if p8 < 0:
        raise ValueError("negative leading exponent is outside the supported grid")
    poly = [1] + [0] * n
    for delta, r in spec:
        if delta < 1 or r == 0:
            raise ValueError("spec entries must be (positive delta, nonzero r)")
        euler = _euler_coeffs(n, delta)
        for _ in range(abs(r)):
            if r > 0:
                poly = kernels.conv_trunc(poly, euler, n)
            else:
                poly = kernels.div_unit(poly, euler, n)
    if p8 % 3 == 0:
        shift = p8 // 3
        out = [0] * (n + 1)
        for m, c in enumerate(poly):
            if m + shift > n:
                break
            out[m + shift] = c
        return QSeries(1, out)
    out = [0] * (3 * n + 1)
    for m, c in enumerate(poly):
        if 3 * m + p8 > 3 * n:
            break
        out[3 * m + p8] = c
    return QSeries(3, out)


# -- Lambert-type double sums ------------------------------------------------


def lambert_series(kind: str, n: int) -> QSeries:
    """Exact truncated Lambert-type double sums to q-order ``n``.

    kinds: 'c' (d=3), 'bc3' (d=1), 'c_cubed' (d=1), 'E0' (d=3, rational).
    """
    if n < 0:
        raise ValueError("order must be nonnegative")
    if kind == "c":
        ng = 3 * n
        co = [0] * (ng + 1)
        for r in range(1, ng + 1):
            ch = chi3(r)
            if ch == 0:
                continue
            for s in range(1, ng // r + 1):
                m = r * s
                co[m] += 3 * ch
                if 3 * m <= ng:
                    co[3 * m] -= 3 * ch
        return QSeries(3, co)
    if kind == "bc3":
        co = [0] * (n + 1)
        for k in range(1, n + 1):
            for m in range(k, n + 1, k):
                co[m] += 3 * chi3(m) * k
        return QSeries(1, co)
    if kind == "c_cubed":
        co = [0] * (n + 1)
        for nn in range(1, n + 1):
            ch = chi3(nn)
            if ch == 0:
                continue
            for s in range(1, n // nn + 1):
                co[nn * s] += 27 * ch * s * s
        return QSeries(1, co)
    if kind == "E0":
        ng = 3 * n
        co = [Fraction(0)] * (ng + 1)
        for k in range(1, ng + 1):
            for r in range(1, ng // k + 1):
                m = k * r
                ch = chi3(m)
                if ch == 0:
                    continue
                w = Fraction(ch, k)
                co[m] += w
                if 3 * m <= ng:
                    co[3 * m] -= w
        return QSeries(3, co)
    raise ValueError(f"unknown lambert kind {kind!r}")


# -- the weight-3 theta product ----------------------------------------------

_FFT_CUTOFF = 4_000
_LIMB_BITS = 11


def _f_coeffs_product(n: int) -> list:
    """a_n of (1/3) b(q)^2 c(q^3) by exact truncated products."""
    b = theta_series("b", n)
    c3 = theta_series("c", n).substitute_power(3)  # lands on the integer grid
    f3 = b * b * c3
    return f3.exact_div(3).coeffs


def _f_coeffs_fft(n: int) -> list:
    """a_n via the weight-2 Lambert factorization b * (chi3 * sigma).

    The convolution runs as limb-split real FFTs with an exactness guard:
    every rounded value must be within 0.05 of an integer, and limb
    magnitudes are checked against their 11-bit budget.
    """
    c0, c1, _ = _counts_hexagonal(n)
    b = np.array(c0, dtype=np.int64) - np.array(c1, dtype=np.int64)
    sig = np.zeros(n + 1, dtype=np.int64)
    for d in range(1, n + 1):
        sig[d::d] += d
    j = np.arange(n + 1)
    chi = np.where(j % 3 == 1, 1, np.where(j % 3 == 2, -1, 0)).astype(np.int64)
    Y = chi * sig
    if int(np.abs(b).max()) >= (1 << _LIMB_BITS):
        raise AssertionError("theta-b coefficient exceeded its limb budget")
    if int(np.abs(Y).max()) >= (1 << (2 * _LIMB_BITS)):
        raise AssertionError("sigma coefficient exceeded its limb budget")
    sign = np.sign(Y)
    aY = np.abs(Y)
    ylo = (aY % (1 << _LIMB_BITS)) * sign
    yhi = (aY >> _LIMB_BITS) * sign
    size = 1
    while size < 2 * (n + 1):
        size *= 2
    fb = np.fft.rfft(b.astype(np.float64), size)
    flo = np.fft.rfft(ylo.astype(np.float64), size)
    fhi = np.fft.rfft(yhi.astype(np.float64), size)
    clo = np.fft.irfft(fb * flo, size)[: n + 1]
    chi_ = np.fft.irfft(fb * fhi, size)[: n + 1]
    drift = max(np.abs(clo - np.rint(clo)).max(), np.abs(chi_ - np.rint(chi_)).max())
    if drift > 0.05:
        raise AssertionError(f"FFT convolution drift {drift:.3g} too large to round")
    out = np.rint(clo).astype(np.int64) + (np.rint(chi_).astype(np.int64) << _LIMB_BITS)
    check = _f_coeffs_product(min(n, 64))
    if out[: len(check)].tolist() != check:
        raise AssertionError("fast coefficient path disagrees with the exact product")
    return out.tolist()


def f_coefficients(n: int) -> QSeries:
    """Integer coefficients a_m, m <= n, of the weight-3 product (1/3) b^2 c(q^3)."""
    if n < 1:
        raise ValueError("order must be at least 1")
    if n <= _FFT_CUTOFF:
        return QSeries(1, _f_coeffs_product(n))
    return QSeries(1, _f_coeffs_fft(n))


# -- dump format --------------------------------------------------------------


def dump_lines(series: QSeries):
    """Yield the dump lines 'e/d<TAB>num/den' for nonzero terms, ascending e."""
    for e, c in enumerate(series.coeffs):
        if c == 0:
            continue
        fr = Fraction(c)
        yield f"{e}/{series.d}\t{fr.numerator}/{fr.denominator}"
