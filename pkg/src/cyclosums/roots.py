"""Generalized harmonic sums at roots of unity: Li_1/Li_2 values, the
distribution relation, the depth-2 sigma_{1,1} closed forms, and the
motivic dimension majorants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .constants import (
    CATALAN,
    ConstantExpr,
    PI,
    PSI,
    R5P2R5,
    SQRT,
    LN,
    _GUARD,
    eval_constant,
)
from .cyclopoly import totient, factorize

F = Fraction


def unity_root(l: int, k: int, prec: int = 30):
    with mp.workdps(prec + _GUARD):
        return mp.exp(2j * mp.pi * k / l)


def eval_generalized_sum(ks: tuple[int, ...], xs: tuple, N: int, prec: int = 30):
    """S_{k1..km}(x1..xm; N) = sum_{i<=N} x1^i/i^k1 * S_{k2..}(x2..; i),
    computed directly in complex arithmetic."""
    if len(ks) != len(xs):
        raise ValueError("index/weight length mismatch")
    with mp.workdps(prec + _GUARD):
        d = len(ks)
        vals = [mp.mpc(0)] * (d + 1)
        vals[d] = mp.mpc(1)
        xs_c = [mp.mpc(x) for x in xs]
        for i in range(1, N + 1):
            for lvl in range(d - 1, -1, -1):
                vals[lvl] += xs_c[lvl] ** i / mp.mpf(i) ** ks[lvl] * vals[lvl + 1]
        return +vals[0]


def distribution_check(ks: tuple[int, ...], xs: tuple, l: int, N: int, prec: int = 30, tol=None):
    """Verify S(x; N) = prod l^(k_j - 1) * sum over l-th roots y of x of
    S(y; l N).  Returns (holds, |residual|)."""
    if l < 1:
        raise ValueError("l >= 1")
    with mp.workdps(prec + _GUARD):
        lhs = eval_generalized_sum(ks, xs, N, prec)
        roots = []
        for x in xs:
            x = mp.mpc(x)
            base = x ** (mp.mpf(1) / l)
            roots.append([base * mp.exp(2j * mp.pi * j / l) for j in range(l)])
        rhs = mp.mpc(0)
        import itertools

        for combo in itertools.product(*roots):
            rhs += eval_generalized_sum(ks, combo, l * N, prec)
        for k in ks:
            rhs *= mp.mpf(l) ** (k - 1)
        resid = abs(lhs - rhs)
        if tol is None:
            tol = mp.mpf(10) ** (-(prec - 6))
        return resid < tol, resid


# --- Li_1 and Li_2 at roots of unity ----------------------------------------

_LI1_RE_CLOSED: dict[tuple[int, int], ConstantExpr] = {
    (2, 1): -ConstantExpr.symbol(LN(2)),
    (3, 1): F(-1, 2) * ConstantExpr.symbol(LN(3)),
    (3, 2): F(-1, 2) * ConstantExpr.symbol(LN(3)),
    (4, 1): F(-1, 2) * ConstantExpr.symbol(LN(2)),
    (4, 3): F(-1, 2) * ConstantExpr.symbol(LN(2)),
    # Re Li_1(e_5) = (1/2) ln((sqrt5+1)/2) - (1/4) ln 5, and ln((sqrt5+1)/2)
    # = ln 2 - ln(sqrt5 - 1)
    (5, 1): F(1, 2) * (ConstantExpr.symbol(LN(2)) - ConstantExpr.symbol(LN("sqrt5-1")))
    - F(1, 4) * ConstantExpr.symbol(LN(5)),
    (5, 2): F(1, 2) * (ConstantExpr.symbol(LN("sqrt5-1")) - ConstantExpr.symbol(LN(2)))
    - F(1, 4) * ConstantExpr.symbol(LN(5)),
    (6, 1): ConstantExpr(),
    (8, 1): F(-1, 4) * ConstantExpr.symbol(LN(2)) - F(1, 2) * ConstantExpr.symbol(LN("sqrt2-1")),
    (12, 1): F(1, 2) * ConstantExpr.symbol(LN(2)) - ConstantExpr.symbol(LN("sqrt3-1")),
}


def _sqrt5p1r5() -> ConstantExpr:
    """sqrt(5 + sqrt5) over the canonical surd atoms."""
    return F(1, 2) * ConstantExpr.symbol(SQRT(2)) * R5P2R5 * (ConstantExpr.symbol(SQRT(5)) - 1)


def _sqrt5m1r5() -> ConstantExpr:
    """sqrt(5 - sqrt5) over the canonical surd atoms."""
    return F(1, 2) * ConstantExpr.symbol(SQRT(2)) * R5P2R5 * (3 - ConstantExpr.symbol(SQRT(5)))


def _li2_im_closed(l: int, k: int) -> ConstantExpr | None:
    pi = ConstantExpr.symbol(PI)
    pi2 = ConstantExpr({((PI, 2),): F(1)})
    r3 = ConstantExpr.symbol(SQRT(3))
    if (l, k) in ((1, 0), (2, 1)):
        return ConstantExpr()
    if (l, k) == (3, 1):
        return F(1, 9) * r3 * (ConstantExpr.symbol(PSI(1, 1, 3)) - F(2, 3) * pi2)
    if (l, k) == (4, 1):
        return ConstantExpr.symbol(CATALAN)
    if (l, k) == (6, 1):
        return F(3, 2) * _li2_im_closed(3, 1)
    if (l, k) in ((5, 1), (5, 2)):
        # normalization 1/(5*sqrt10); the companion root fixes the sign pattern
        s5 = ConstantExpr.symbol(SQRT(5))
        pref = F(1, 50) * ConstantExpr.symbol(SQRT(2)) * s5  # = 1/(5 sqrt10)
        a = _sqrt5p1r5() * F(1, 5) * s5  # sqrt(1 + 1/sqrt5)
        b = _sqrt5m1r5() * F(1, 5) * s5  # sqrt(1 - 1/sqrt5)
        t1 = ConstantExpr.symbol(PSI(1, 1, 5)) - pi2 * (1 + F(1, 5) * s5)
        t2 = ConstantExpr.symbol(PSI(1, 2, 5)) - pi2 * (1 - F(1, 5) * s5)
        if k == 1:
            return pref * (a * t1 + b * t2)
        return pref * (b * t1 - a * t2)
    if (l, k) == (8, 1):
        return (
            F(1, 32) * ConstantExpr.symbol(SQRT(2)) * ConstantExpr.symbol(PSI(1, 1, 8))
            + F(1, 4) * (1 - 2 * ConstantExpr.symbol(SQRT(2))) * ConstantExpr.symbol(CATALAN)
            - F(1, 16) * (1 + ConstantExpr.symbol(SQRT(2))) * pi2
        )
    if (l, k) == (12, 1):
        return (
            F(1, 24) * r3 * ConstantExpr.symbol(PSI(1, 1, 3))
            + F(2, 3) * ConstantExpr.symbol(CATALAN)
            - F(1, 36) * r3 * pi2
        )
    return None


@dataclass
class RootPolylogValue:
    weight: int
    l: int
    k: int
    value: complex
    re_closed: ConstantExpr | None
    im_closed: ConstantExpr | None


def li_root(weight: int, l: int, k: int, prec: int = 30) -> RootPolylogValue:
    """Li_weight at the root e_l^k for weight in {1, 2}: the elementary part
    (Im for weight 1, Re for weight 2) always comes back closed; the other
    part is closed on the printed grid and numeric otherwise."""
    if weight not in (1, 2):
        raise ValueError("weight 1 or 2")
    if not (0 <= k < l) if weight == 1 else not (0 <= k < l):
        raise ValueError("need 0 <= k < l")
    if weight == 1 and k % l == 0:
        raise ValueError("Li_1 diverges at 1")
    with mp.workdps(prec + _GUARD):
        z = unity_root(l, k, prec)
        if weight == 1:
            val = -mp.log(1 - z)
            im = ConstantExpr({((PI, 1),): F(l - 2 * k, 2 * l)})
            re = _LI1_RE_CLOSED.get((l, k))
            return RootPolylogValue(1, l, k, +val, re, im)
        val = mp.polylog(2, z) if k % l else mp.zeta(2)
        re = ConstantExpr({((PI, 2),): F(6 * k * (k - l) + l * l, 6 * l * l)})
        im = _li2_im_closed(l, k)
        return RootPolylogValue(2, l, k, +val, re, im)


# --- depth-2 sigma at roots of unity ------------------------------------------

def sigma11_closed(x, y, prec: int = 30):
    """sigma_{1,1}(x, y) = sum_{i>=j>=1} x^i y^j/(i j) for |x|,|y| <= 1 with
    x != 1, via dilogarithm closed forms.

    The base identity is Li_2(x) + ln(1-x)^2/2 + Li_2(-x(1-y)/(1-x)); at
    y = conj(x) on the unit circle the last argument is 1, so the printed
    special case misses the zeta(2) it contributes.
    """
    with mp.workdps(prec + _GUARD):
        xc, yc = mp.mpc(x), mp.mpc(y)
        if abs(xc - 1) < mp.mpf(10) ** (-prec):
            raise ValueError("divergent: outer weight 1 at x = 1")
        arg = -xc * (1 - yc) / (1 - xc)
        return +(mp.polylog(2, arg) + mp.polylog(2, xc) + mp.log(1 - xc) ** 2 / 2)


def sigma11_direct(x, y, prec: int = 25, terms: int = 600):
    """Accelerated direct double summation: sum_j y^j/j * (tail of x^i/i),
    the tail kept exact through Lerch transcendents."""
    from .constants import _sum_series

    with mp.workdps(prec + _GUARD):
        xc, yc = mp.mpc(x), mp.mpc(y)

        def factory():
            j = 0
            while True:
                j += 1
                # sum_{i >= j} x^i / i = x^j * lerchphi(x, 1, j)
                tail = xc**j * mp.lerchphi(xc, 1, j)
                yield yc**j / j * tail

        return _sum_series(factory, prec, direct_limit=10**6, levin_terms=terms)


def sigma11_symmetric_check(x, y, prec: int = 25):
    """The symmetric identity sigma(x,y) + sigma(y,x) =
    ln(1-x) ln(1-y) + Li_2(x y); returns the residual."""
    with mp.workdps(prec + _GUARD):
        xc, yc = mp.mpc(x), mp.mpc(y)
        lhs = sigma11_closed(xc, yc, prec) + sigma11_closed(yc, xc, prec)
        rhs = mp.log(1 - xc) * mp.log(1 - yc) + (
            mp.polylog(2, xc * yc) if abs(xc * yc - 1) > mp.mpf(10) ** (-prec) else mp.zeta(2)
        )
        return abs(lhs - rhs)


def li2_one_minus_root(l: int, k: int, prec: int = 30):
    """Li_2(1 - e_l^k) = -Li_2(e_l^k) + 2 pi i (k/l) Li_1(e_l^k) + pi^2/6."""
    with mp.workdps(prec + _GUARD):
        z = unity_root(l, k, prec)
        return +(-mp.polylog(2, z) + 2j * mp.pi * mp.mpf(k) / l * (-mp.log(1 - z)) + mp.pi**2 / 6)


# --- motivic dimension majorants ------------------------------------------------

def motivic_dim(w: int, n: int) -> int:
    """n-th Taylor coefficient of the weight-w generating function
    G_1 = 1/(1-x^2-x^3), G_2 = 1/(1-x-x^2),
    G_k = 1/(1 - (phi(k)+nu)/2 x - (nu-1) x^2) for k >= 3."""
    if w < 1 or n < 0:
        raise ValueError("need w >= 1 and n >= 0")
    if w == 1:
        c = [F(1), F(0), F(1), F(1)]  # 1 - x^2 - x^3 denominator
        den = [F(1), F(0), F(-1), F(-1)]
    elif w == 2:
        den = [F(1), F(-1), F(-1)]
    else:
        nu = len(factorize(w))
        lin = F(totient(w) + nu, 2)
        den = [F(1), -lin, F(-(nu - 1))]
    coeffs = [F(1)]
    for m in range(1, n + 1):
        acc = F(0)
        for i in range(1, min(m, len(den) - 1) + 1):
            acc -= den[i] * coeffs[m - i]
        coeffs.append(acc)
    val = coeffs[n]
    assert val.denominator == 1
    return int(val)
