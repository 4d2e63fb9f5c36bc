"""Closed representations of the single sums sum_{k=1}^N (+-1)^k/(l k + m)
in terms of harmonic numbers at multiple arguments, the Mellin functions
phi_k(l, r N), and weight-1 sigma constants -- the twenty-two cases with
l <= 6 and gcd(m, l) = 1.

Each identity is stored as term data; ``eval_representation`` interprets it
numerically so every identity can be pinned against exact summation.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath as mp

from .constants import _GUARD, sigma_w1_value
from .numerics import phi

F = Fraction

# term kinds:
#   ("nratio", c, a, b)          c * N/(a N + b)
#   ("inv", c, a, b)             c / (a N + b)
#   ("const", c)                 c
#   ("S", c, sign, mult)         c * S_sign(mult * N)   (harmonic / alternating)
#   ("phi", c, k, l, mult, plus) c * phi_k(l, mult*N) [plus-regularized]
#   ("sigma", c, l, m, sign)     c * sigma_{l,m,sign}
# an identity is (base_terms, twist_terms); twist terms carry (-1)^N

IDENTITIES: dict[tuple[int, int, int], tuple[list, list]] = {
    (2, 1, 1): (
        [("nratio", F(-2), 2, 1), ("S", F(-1, 2), 1, 1), ("S", F(1), 1, 2)],
        [],
    ),
    (2, 1, -1): (
        [("sigma", F(1), 2, 1, -1)],
        [("inv", F(1), 2, 1), ("phi", F(-1), 4, 0, 2, False)],
    ),
    (3, 1, 1): (
        [("nratio", F(-3), 3, 1), ("S", F(-1, 6), 1, 1), ("S", F(1, 2), 1, 3),
         ("phi", F(-1, 2), 3, 0, 3, True)],
        [],
    ),
    (3, 1, -1): (
        [("S", F(1, 6), -1, 1), ("S", F(-1, 2), -1, 3),
         ("sigma", F(1, 3), 1, 0, -1), ("sigma", F(1), 3, 1, -1)],
        [("inv", F(1), 3, 1), ("phi", F(-1, 2), 6, 0, 3, False)],
    ),
    (3, 2, 1): (
        [("nratio", F(-3, 2), 3, 2), ("S", F(-1, 6), 1, 1), ("S", F(1, 2), 1, 3),
         ("phi", F(1, 2), 3, 0, 3, True)],
        [],
    ),
    (3, 2, -1): (
        [("S", F(-1, 6), -1, 1), ("S", F(1, 2), -1, 3),
         ("sigma", F(1, 3), 1, 0, -1), ("sigma", F(1), 3, 1, -1), ("const", F(1, 2))],
        [("inv", F(1), 3, 2), ("phi", F(-1, 2), 6, 0, 3, False)],
    ),
    (4, 1, 1): (
        [("nratio", F(-2), 4, 1), ("S", F(-1, 4), 1, 2), ("S", F(1, 2), 1, 4),
         ("phi", F(-1, 2), 4, 0, 4, False), ("sigma", F(1, 2), 2, 1, -1),
         ("inv", F(1, 2), 4, 1)],
        [],
    ),
    (4, 1, -1): (
        [("sigma", F(1), 4, 1, -1)],
        [("inv", F(1), 4, 1), ("phi", F(-1), 8, 0, 4, False)],
    ),
    (4, 3, 1): (
        [("nratio", F(-10, 3), 4, 3), ("S", F(-1, 4), 1, 2), ("S", F(1, 2), 1, 4),
         ("phi", F(1, 2), 4, 0, 4, False), ("sigma", F(-1, 2), 2, 1, -1),
         ("inv", F(-3, 2), 4, 3)],
        [],
    ),
    (4, 3, -1): (
        [("sigma", F(1), 4, 3, -1)],
        [("inv", F(1), 4, 3), ("phi", F(-1), 8, 2, 4, False)],
    ),
    (5, 1, 1): (
        [("nratio", F(-5), 5, 1), ("S", F(-1, 20), 1, 1), ("S", F(1, 4), 1, 5),
         ("phi", F(-3, 4), 5, 0, 5, True), ("phi", F(-1, 2), 5, 1, 5, True),
         ("phi", F(-1, 4), 5, 2, 5, True)],
        [],
    ),
    (5, 1, -1): (
        [("S", F(1, 20), -1, 1), ("S", F(-1, 4), -1, 5),
         ("sigma", F(1, 5), 1, 0, -1), ("sigma", F(1), 5, 1, -1)],
        [("phi", F(-3, 4), 10, 0, 5, False), ("phi", F(1, 2), 10, 1, 5, False),
         ("phi", F(-1, 4), 10, 2, 5, False), ("inv", F(1), 5, 1)],
    ),
    (5, 2, 1): (
        [("nratio", F(-5, 2), 5, 2), ("S", F(-1, 20), 1, 1), ("S", F(1, 4), 1, 5),
         ("phi", F(1, 4), 5, 0, 5, True), ("phi", F(-1, 2), 5, 1, 5, True),
         ("phi", F(-1, 4), 5, 2, 5, True)],
        [],
    ),
    (5, 2, -1): (
        [("S", F(-1, 20), -1, 1), ("S", F(1, 4), -1, 5),
         ("sigma", F(-1, 5), 1, 0, -1), ("sigma", F(1), 5, 2, -1)],
        [("phi", F(-1, 4), 10, 0, 5, False), ("phi", F(-1, 2), 10, 1, 5, False),
         ("phi", F(1, 4), 10, 2, 5, False), ("inv", F(1), 5, 2)],
    ),
    (5, 3, 1): (
        [("nratio", F(-5, 3), 5, 3), ("S", F(-1, 20), 1, 1), ("S", F(1, 4), 1, 5),
         ("phi", F(1, 4), 5, 0, 5, True), ("phi", F(1, 2), 5, 1, 5, True),
         ("phi", F(-1, 4), 5, 2, 5, True)],
        [],
    ),
    (5, 3, -1): (
        [("S", F(1, 20), -1, 1), ("S", F(-1, 4), -1, 5),
         ("sigma", F(1, 5), 1, 0, -1), ("sigma", F(1), 5, 3, -1)],
        [("phi", F(1, 4), 10, 0, 5, False), ("phi", F(-1, 2), 10, 1, 5, False),
         ("phi", F(-1, 4), 10, 2, 5, False), ("inv", F(1), 5, 3)],
    ),
    (5, 4, 1): (
        [("nratio", F(-5, 4), 5, 4), ("S", F(-1, 20), 1, 1), ("S", F(1, 4), 1, 5),
         ("phi", F(1, 4), 5, 0, 5, True), ("phi", F(1, 2), 5, 1, 5, True),
         ("phi", F(3, 4), 5, 2, 5, True)],
        [],
    ),
    (5, 4, -1): (
        [("S", F(-1, 20), -1, 1), ("S", F(1, 4), -1, 5),
         ("sigma", F(3, 5), 1, 0, -1), ("sigma", F(1), 5, 1, -1),
         ("sigma", F(-1), 5, 2, -1), ("sigma", F(1), 5, 3, -1), ("const", F(7, 12))],
        [("phi", F(-1, 4), 10, 0, 5, False), ("phi", F(1, 2), 10, 1, 5, False),
         ("phi", F(-3, 4), 10, 2, 5, False), ("inv", F(1), 5, 4)],
    ),
    (6, 1, 1): (
        [("nratio", F(-6), 6, 1), ("S", F(1, 12), 1, 1), ("S", F(-1, 6), 1, 2),
         ("S", F(-1, 4), 1, 3), ("S", F(1, 2), 1, 6),
         ("phi", F(-1, 4), 3, 0, 3, True), ("phi", F(-1, 2), 3, 0, 6, True)],
        [],
    ),
    (6, 1, -1): (
        [("sigma", F(1), 6, 1, -1)],
        [("phi", F(-1), 12, 0, 6, False), ("phi", F(1, 3), 4, 0, 2, False),
         ("inv", F(1), 6, 1)],
    ),
    (6, 5, 1): (
        [("nratio", F(-6, 5), 6, 5), ("S", F(1, 12), 1, 1), ("S", F(-1, 6), 1, 2),
         ("S", F(-1, 4), 1, 3), ("S", F(1, 2), 1, 6),
         ("phi", F(1, 4), 3, 0, 3, True), ("phi", F(1, 2), 3, 0, 6, True)],
        [],
    ),
    (6, 5, -1): (
        [("sigma", F(4, 3), 2, 1, -1), ("sigma", F(-1), 6, 1, -1), ("const", F(2, 15))],
        [("phi", F(1), 12, 0, 6, False), ("phi", F(-2, 3), 4, 0, 2, False),
         ("phi", F(-1), 4, 0, 6, False), ("inv", F(1), 6, 5)],
    ),
}


def supported_cases() -> list[tuple[int, int, int]]:
    return sorted(IDENTITIES)


def direct_single_sum(l: int, m: int, sign: int, N: int) -> Fraction:
    """The defining finite sum, exact over the rationals."""
    return sum((F(sign**k, l * k + m) for k in range(1, N + 1)), F(0))


def _harmonic(sign: int, M: int, prec: int):
    with mp.workdps(prec + _GUARD):
        if sign == 1:
            return mp.fsum(1 / mp.mpf(k) for k in range(1, M + 1))
        return mp.fsum(mp.mpf((-1) ** k) / k for k in range(1, M + 1))


def eval_representation(l: int, m: int, sign: int, N: int, prec: int = 30):
    """Numeric value of the stored representation at integer N >= 1."""
    key = (l, m, sign)
    if key not in IDENTITIES:
        raise ValueError(f"no stored representation for {key}")
    base, twist = IDENTITIES[key]
    with mp.workdps(prec + _GUARD):
        total = _eval_terms(base, N, prec)
        if twist:
            total += mp.mpf((-1) ** N) * _eval_terms(twist, N, prec)
        return +total


def _eval_terms(terms: list, N: int, prec: int):
    total = mp.mpf(0)
    for term in terms:
        kind = term[0]
        c = term[1]
        cv = mp.mpf(c.numerator) / c.denominator
        if kind == "nratio":
            _, _, a, b = term
            total += cv * N / mp.mpf(a * N + b)
        elif kind == "inv":
            _, _, a, b = term
            total += cv / mp.mpf(a * N + b)
        elif kind == "const":
            total += cv
        elif kind == "S":
            _, _, sgn, mult = term
            total += cv * _harmonic(sgn, mult * N, prec)
        elif kind == "phi":
            _, _, k, lz, mult, plus = term
            total += cv * phi(k, lz, mult * N, prec, plus=plus)
        elif kind == "sigma":
            _, _, ll, mm, sgn = term
            total += cv * sigma_w1_value(ll, mm, sgn, prec)
        else:
            raise ValueError(f"unknown term kind {kind}")
    return total


def single_sum_representation(l: int, m: int, n: int, sign: int):
    """The stored identity for sum_{k=1}^N sign^k/(l k + m)^n; only the
    twenty-two weight-1 cases carry closed forms (n = 1, l <= 6)."""
    if n != 1:
        raise ValueError("closed representations are stored for n = 1 only; "
                         "use higher_weight_integral for n >= 2")
    key = (l, m, sign)
    if key not in IDENTITIES:
        raise ValueError(f"unsupported case {key}")
    return IDENTITIES[key]


def higher_weight_integral(l: int, m: int, n: int, sign: int, N: int, prec: int = 30):
    """Numeric single sum of weight n >= 1 via the log-kernel integral
    representation sum_{k=0}^{N-1} sign^k/(l k + m)^n
    = (-1)^(n-1)/(n-1)! * int_0^1 ln^(n-1)(x) x^(m-1) (sign^N x^(lN) - 1)/(x^l - sign) dx,
    for m < l (note the k = 0 start)."""
    if not (1 <= m < l) or n < 1 or N < 1:
        raise ValueError("need 1 <= m < l, n >= 1, N >= 1")
    from math import factorial

    with mp.workdps(prec + _GUARD):
        sgnN = mp.mpf(sign) ** N

        def kernel(x):
            num = sgnN * x ** (l * N) - 1
            den = x**l - sign
            body = x ** (m - 1) * num / den
            if n > 1:
                body *= mp.ln(x) ** (n - 1)
            return body

        pref = mp.mpf((-1) ** (n - 1)) / factorial(n - 1)
        if sign == -1:
            pref = -pref
        return +(pref * mp.quad(kernel, [0, 1]))
