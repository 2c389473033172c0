"""Extended-precision evaluation of the cubic theta values a, b, c, eta on
the real segment q in (0, 1).

Direct lattice sums converge fast only for small q, so evaluation is split at
the fixed point u0 = 1/sqrt(3) of u <-> 1/(3u) (q = exp(-2*pi*u)): above u0
the defining series are summed with a certified geometric tail bound, below it
the involution

    b(exp(-2*pi*u)) = c(exp(-2*pi/(3*u))) / (sqrt(3)*u)
    c(exp(-2*pi*u)) = b(exp(-2*pi/(3*u))) / (sqrt(3)*u)

maps the argument back into the fast region.  a has no involution of its own
and is recovered as (b^3 + c^3)^(1/3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp, mpf, mpmathify

from . import qexp

__all__ = [
    "Precision",
    "ThetaPoint",
    "eval_theta",
    "alpha_of_q",
    "alpha_pair",
    "theta_point",
    "f_integrand",
    "residual_hauptmodul",
    "differential_residual",
]


@dataclass(frozen=True)
class Precision:
    """Working precision contract: ``working_digits`` decimal digits carried,
    ``target_tol`` the absolute error the caller wants certified."""

    working_digits: int = 40
    target_tol: float = 1e-10

    def __post_init__(self):
        if self.working_digits < 15:
            raise ValueError("working_digits must be at least 15")
        need = -math.log10(float(self.target_tol)) + 10
        if self.working_digits < need:
            raise ValueError(
                f"working_digits={self.working_digits} leaves fewer than 10 guard "
                f"digits for target_tol={self.target_tol}"
            )

    @property
    def dps(self) -> int:
        return self.working_digits

    def tol(self) -> mpf:
        return mpf(self.target_tol)


@dataclass(frozen=True)
class ThetaPoint:
    """One point q = exp(-2*pi*u) with its theta values and hauptmodul."""

    q: mpf
    u: mpf
    a: mpf
    b: mpf
    c: mpf
    alpha: mpf


# -- coefficient tables (exact integers, grown on demand) -------------------

_TABLES: dict = {"a": [], "b": [], "c": []}


def _table(kind: str, m: int) -> list:
    tab = _TABLES[kind]
    if len(tab) <= m:
        grow = max(2 * m + 16, 128)
        if kind == "c":
            grid = qexp._counts_shifted(3 * grow + 1)
            tab = [grid[3 * k + 1] for k in range(grow + 1)]
        else:
            c0, c1, c2 = qexp._counts_hexagonal(grow)
            if kind == "a":
                tab = [c0[k] + c1[k] + c2[k] for k in range(grow + 1)]
            else:
                tab = [c0[k] - c1[k] for k in range(grow + 1)]
        _TABLES[kind] = tab
    return tab


def _terms_needed(q: mpf, tol: mpf) -> int:
    """Smallest M whose geometric tail bound 12*(M+3)*q^(M+1)/(1-q)^2 <= tol."""
    lq = mp.log(q)
    guess = int(float((mp.log(tol) + 2 * mp.log(1 - q) - mp.log(60)) / lq)) + 1
    m = max(guess, 4)
    while 12 * (m + 3) * q ** (m + 1) / (1 - q) ** 2 > tol:
        m += max(m // 8, 2)
    if m > 2_000_000:
        raise ArithmeticError("tolerance unattainable: direct series too long")
    return m


def _theta_direct(kind: str, q: mpf, tol: mpf) -> mpf:
    """Defining series summed directly with a certified tail cutoff."""
    if kind == "eta":
        val = q ** mpf("1/24")  # j = 0 term
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            g2 = j * (3 * j + 1) // 2
            s = -1 if j % 2 else 1
            add = q ** (g1 + mpf("1/24")) + q ** (g2 + mpf("1/24"))
            val += s * add
            if add < tol / 4:
                break
            j += 1
        return val
    m = _terms_needed(q, tol)
    tab = _table(kind, m)
    acc = mpf(0)
    for e in range(m, -1, -1):
        acc = acc * q + tab[e]
    if kind == "c":
        return acc * q ** mpf("1/3")
    return acc


_U0_CACHE: dict = {}


def _u_split() -> mpf:
    key = mp.prec
    v = _U0_CACHE.get(key)
    if v is None:
        v = 1 / mp.sqrt(3)
        _U0_CACHE[key] = v
    return v


def _theta_u(kind: str, u: mpf, tol: mpf) -> mpf:
    """Theta value at q = exp(-2*pi*u), dispatching on the involution."""
    u0 = _u_split()
    if kind == "a":
        if u >= u0:
            return _theta_direct("a", mp.exp(-2 * mp.pi * u), tol)
        b3 = _theta_u("b", u, tol / 8) ** 3
        c3 = _theta_u("c", u, tol / 8) ** 3
        return (b3 + c3) ** mpf("1/3")
    if kind == "eta":
        if u >= 1:
            return _theta_direct("eta", mp.exp(-2 * mp.pi * u), tol)
        return _theta_direct("eta", mp.exp(-2 * mp.pi / u), tol * mp.sqrt(u)) / mp.sqrt(u)
    if u >= u0:
        return _theta_direct(kind, mp.exp(-2 * mp.pi * u), tol)
    dual = "c" if kind == "b" else "b"
    scale = mp.sqrt(3) * u
    return _theta_direct(dual, mp.exp(-2 * mp.pi / (3 * u)), tol * scale) / scale


def _as_q(q) -> mpf:
    qq = mpmathify(q)
    if not (0 < qq < 1):
        raise ValueError(f"q must lie in (0, 1), got {q}")
    return qq


def eval_theta(kind: str, q, prec: Precision) -> mpf:
    """Evaluate a(q), b(q), c(q) or eta(q) with absolute error <= target_tol."""
    if kind not in ("a", "b", "c", "eta"):
        raise ValueError(f"unknown theta kind {kind!r}")
    with mp.workdps(prec.dps + 10):
        qq = _as_q(q)
        u = -mp.log(qq) / (2 * mp.pi)
        return _theta_u(kind, u, prec.tol() / 4)


def alpha_pair(q, prec: Precision):
    """(alpha, 1 - alpha) = (c^3, b^3)/a^3, each computed without cancellation."""
    with mp.workdps(prec.dps + 10):
        qq = _as_q(q)
        u = -mp.log(qq) / (2 * mp.pi)
        tol = prec.tol() / 16
        b3 = _theta_u("b", u, tol) ** 3
        c3 = _theta_u("c", u, tol) ** 3
        a3 = b3 + c3
        alpha = c3 / a3
        comp = b3 / a3
        return alpha, comp


def alpha_of_q(q, prec: Precision) -> mpf:
    """Hauptmodul alpha = c^3/a^3 in (0, 1)."""
    return alpha_pair(q, prec)[0]


def theta_point(q, prec: Precision) -> ThetaPoint:
    """Evaluate all theta data at q and check the cubic identity residually."""
    with mp.workdps(prec.dps + 10):
        qq = _as_q(q)
        u = -mp.log(qq) / (2 * mp.pi)
        tol = prec.tol() / 16
        b = _theta_u("b", u, tol)
        c = _theta_u("c", u, tol)
        a3 = b ** 3 + c ** 3
        a = a3 ** mpf("1/3")
        alpha = c ** 3 / a3
        if not (a > 0 and b > 0 and c > 0):
            raise ArithmeticError("theta values left the positive real segment")
        if abs(alpha + b ** 3 / a3 - 1) > prec.tol():
            raise ArithmeticError("cubic identity residual exceeded tolerance")
        return ThetaPoint(q=qq, u=u, a=a, b=b, c=c, alpha=alpha)


def f_integrand(u, prec: Precision) -> mpf:
    """b(q)^2 c(q^3) at q = exp(-2*pi*u).

    For u below the split point the product is rewritten through the
    involution once: c(q')^2 b(q'') / (9*sqrt(3)*u^3) with q' = exp(-2*pi/(3u))
    and q'' = exp(-2*pi/(9u)).
    """
    with mp.workdps(prec.dps + 10):
        uu = mpmathify(u)
        if not uu > 0:
            raise ValueError(f"u must be positive, got {u}")
        tol = prec.tol() / 16
        u0 = _u_split()
        if uu >= u0:
            b = _theta_u("b", uu, tol)
            c = _theta_u("c", 3 * uu, tol)
            val = b * b * c
        else:
            scale = 9 * mp.sqrt(3) * uu ** 3
            cc = _theta_direct("c", mp.exp(-2 * mp.pi / (3 * uu)), tol * scale)
            bb = _theta_u("b", 1 / (9 * uu), tol * scale)
            val = cc * cc * bb / scale
        return val


def residual_hauptmodul(q, prec: Precision) -> mpf:
    """a(q) minus the Gauss hypergeometric value 2F1(1/3, 2/3; 1; alpha(q)).

    The complement 1 - alpha is fed to the hypergeometric side explicitly, so
    the comparison stays meaningful arbitrarily close to alpha = 1.
    """
    from fractions import Fraction

    from . import hyper

    with mp.workdps(prec.dps + 10):
        qq = _as_q(q)
        u = -mp.log(qq) / (2 * mp.pi)
        tol = prec.tol() / 16
        b3 = _theta_u("b", u, tol) ** 3
        c3 = _theta_u("c", u, tol) ** 3
        a3 = b3 + c3
        a = a3 ** mpf("1/3")
        alpha = c3 / a3
        comp = b3 / a3
        if alpha <= 0 or comp <= 0:
            raise ArithmeticError("hauptmodul left (0, 1) at working precision")
        f = hyper.gauss_2f1_unit_interval(
            Fraction(1, 3), Fraction(2, 3), Fraction(1), alpha, comp, prec.dps
        )
        return a - f


def differential_residual(q, prec: Precision, h0: float = 1e-2, levels: int = 4):
    """Central-difference check of d(alpha)/dq against a(q)^2 alpha(1-alpha)/q.

    Returns (fd_errors, extrapolated_residual): fd_errors[i] is the
    finite-difference defect at step h0/2^i (their ratios should approach 4),
    and the extrapolated residual is the Richardson limit of the ladder.
    """
    with mp.workdps(prec.dps + 10):
        qq = _as_q(q)
        tol = prec.tol()
        pt = theta_point(qq, prec)
        rhs = pt.a ** 2 * pt.alpha * (1 - pt.alpha) / qq
        hs = [mpf(h0) / 2 ** i for i in range(levels)]
        fds = []
        for h in hs:
            ap = alpha_of_q(qq + h, prec)
            am = alpha_of_q(qq - h, prec)
            fds.append((ap - am) / (2 * h))
        errors = [abs(d - rhs) for d in fds]
        # Richardson in h^2 across the ladder
        tab = list(fds)
        for k in range(1, levels):
            for i in range(levels - k):
                tab[i] = tab[i + 1] + (tab[i + 1] - tab[i]) / (4 ** k - 1)
        residual = abs(tab[0] - rhs)
        return errors, residual
