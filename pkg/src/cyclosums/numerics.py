"""Arbitrary-precision evaluation of cyclotomic harmonic polylogarithms and
the Mellin-transform functions phi_k(l, N).

Quadrature is tanh-sinh (mpmath's default), which absorbs the endpoint
log singularities of the 1/x and 1/(x-1) kernels.  Inner values of a
nested integrand are delegated to the cheapest valid evaluator: closed
forms for pure log powers, a Lerch-transcendent form for words of the
shape zeros-then-one-letter, the block series away from x = 1, a Taylor
model near x = 1 for words regular there, and recursive quadrature as the
general fallback.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .cyclopoly import Letter, cyclotomic, totient
from .series import APRIME, eval_expansion
from .words import Word

_GUARD = 12


class DivergentValueError(ValueError):
    """Raised for evaluations at a divergent point (e.g. 1/(x-1) words at 1)."""


def _to_mpf(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def _frac(c: Fraction):
    return mp.mpf(c.numerator) / c.denominator


# --- periodic series coefficients of the letters -----------------------------

@lru_cache(maxsize=None)
def letter_series(k: int, l: int, length: int) -> tuple[int, ...]:
    """First coefficients of x^l / Phi_k(x); the tail is periodic in k."""
    phi = cyclotomic(k)
    c = phi.coeffs
    b = [0] * length
    for q in range(length):
        acc = 1 if q == l else 0
        for n in range(1, min(q, phi.degree) + 1):
            acc -= c[n] * b[q - n]
        b[q] = acc // c[0] if c[0] == 1 else -acc  # Phi_1 has c0 = -1
    return tuple(b)


def _letter_periodic_data(k: int, l: int) -> tuple[tuple[int, ...], int]:
    """(coefficients up to the periodic regime, start of periodicity)."""
    start = l + (k - totient(k)) + k  # transient is over well before this
    buf = letter_series(k, l, start + 2 * k)
    for q in range(start, start + k):
        assert buf[q] == buf[q + k], "periodicity start misjudged"
    return buf[: start + k], start


def eval_zeros_then_letter(m: int, k: int, l: int, x, prec: int):
    """C for the word 0^m followed by the single letter f_k^l.

    The coefficient sequence of the letter is periodic, so the value is a
    short combination of Lerch transcendents; below x = 0.97 a direct
    coefficient sum is cheaper and is used instead.  Valid on (0, 1), and
    at x = 1 when m >= 1 and k >= 2.
    """
    s = m + 1
    with mp.workdps(prec + _GUARD):
        xv = _to_mpf(x)
        if not (0 < xv <= 1):
            raise ValueError("need 0 < x <= 1")
        if xv == 1 and (s == 1 or k == 1):
            raise DivergentValueError("divergent at x = 1")
        if k == 1:
            # f_1^l has coefficients -1 from power l on
            head = sum(xv ** (q + 1) / mp.mpf(q + 1) ** s for q in range(l))
            return -(mp.polylog(s, xv) - head)
        if xv <= mp.mpf("0.97"):
            return _ztl_direct(s, k, l, xv, prec)
        coeffs, start = _letter_periodic_data(k, l)
        total = mp.mpf(0)
        for q in range(start):
            if coeffs[q]:
                total += coeffs[q] * xv ** (q + 1) / mp.mpf(q + 1) ** s
        z = xv**k
        for q in range(start, start + k):
            b = coeffs[q]
            if not b:
                continue
            # periodic class q' = q + k*j, j >= 0: terms x^(q'+1)/(q'+1)^s
            rho = (q + 1) % k
            j0 = (q + 1) // k
            if rho == 0:
                tail = mp.polylog(s, z) - mp.fsum(z**j / mp.mpf(j) ** s for j in range(1, j0))
                total += b * tail / mp.mpf(k) ** s
            else:
                lp = mp.lerchphi(z, s, mp.mpf(rho) / k)
                lp -= mp.fsum(z**j / (j + mp.mpf(rho) / k) ** s for j in range(j0))
                total += b * lp * xv**rho / mp.mpf(k) ** s
        return +total


def _ztl_direct(s: int, k: int, l: int, xv, prec: int):
    """Direct summation of sum_q b_q x^(q+1)/(q+1)^s with periodic b_q."""
    need = int((prec + 8) * mp.ln(10) / (-mp.ln(xv))) + 3 * k + l + 8
    coeffs = letter_series(k, l, need)
    total = mp.mpf(0)
    xpow = mp.mpf(1)
    for q, b in enumerate(coeffs):
        xpow *= xv
        if b:
            total += b * xpow / mp.mpf(q + 1) ** s
    return total


# --- Taylor models near x = 1 for words regular there -------------------------

def _word_has_letter_k(w: Word, k: int) -> bool:
    return any(a.k == k for a in w.letters)


def _letter_taylor(letter: Letter, t0, n: int):
    """Taylor coefficients of the letter kernel at t0 (exact rational t0)."""
    # derivatives of x^l/Phi_k via the series of 1/(Phi_k) shifted: do it
    # numerically with high-precision divided power series
    one = mp.mpf(1)
    if letter.k == 0:
        # 1/x at t0: coefficients (-1)^j / t0^(j+1)
        return [(-1) ** j * one / t0 ** (j + 1) for j in range(n)]
    den = cyclotomic(letter.k)
    # shifted polynomial q(u) = Phi_k(t0 + u) coefficients
    dc = [mp.mpf(c) for c in den.coeffs]
    shifted = _shift_poly(dc, t0)
    num = [mp.mpf(0)] * (letter.l + 1)
    num[letter.l] = one
    shifted_num = _shift_poly(num, t0)
    return _series_div(shifted_num, shifted, n)


def _shift_poly(coeffs, t0):
    """Coefficients of p(t0 + u) from coefficients of p(x)."""
    n = len(coeffs)
    out = [mp.mpf(0)] * n
    for i, c in enumerate(coeffs):
        # c * (t0 + u)^i
        term = [c * mp.binomial(i, j) * t0 ** (i - j) for j in range(i + 1)]
        for j, v in enumerate(term):
            out[j] += v
    return out


def _series_div(num, den, n: int):
    num = list(num) + [mp.mpf(0)] * n
    out = []
    inv0 = 1 / den[0]
    for j in range(n):
        v = num[j]
        for i in range(1, min(j, len(den) - 1) + 1):
            v -= den[i] * out[j - i]
        out.append(v * inv0)
    return out


_taylor_cache: dict = {}


def _taylor_model(w: Word, prec: int, t0=None, n: int | None = None):
    """Taylor coefficients of C_w around t0 (default 9/10); valid when no
    letter of w is singular on (t0 - r, 1] -- i.e. no f_1 letters."""
    if t0 is None:
        t0 = mp.mpf(9) / 10
    if n is None:
        n = max(24, int(prec * 2.4) + 8)
    key = (w.letters, prec, str(t0), n)
    got = _taylor_cache.get(key)
    if got is not None:
        return t0, got
    with mp.workdps(prec + _GUARD):
        if w.is_empty():
            coeffs = [mp.mpf(1)] + [mp.mpf(0)] * (n - 1)
        else:
            _, inner = _taylor_model(Word(w.letters[1:]), prec, t0, n)
            f = _letter_taylor(w.letters[0], t0, n)
            prod = [mp.mpf(0)] * n
            for i in range(n):
                if f[i] == 0:
                    continue
                for j in range(n - i):
                    prod[i + j] += f[i] * inner[j]
            coeffs = [hpl_value(w, t0, prec)] + [prod[j] / (j + 1) for j in range(n - 1)]
        _taylor_cache[key] = coeffs
    return t0, coeffs


# --- general dispatcher --------------------------------------------------------

def _zeros_then_letter(w: Word) -> tuple[int, Letter] | None:
    m = 0
    for a in w.letters:
        if a == Letter(0, 0):
            m += 1
        else:
            break
    if m == w.weight - 1:
        return m, w.letters[-1]
    return None


def hpl_value(w: Word, x, prec: int):
    """Evaluate C_w(x) for 0 < x <= 1 by the cheapest valid route."""
    with mp.workdps(prec + _GUARD):
        xv = _to_mpf(x)
        if w.is_empty():
            return mp.mpf(1)
        if all(a == Letter(0, 0) for a in w.letters):
            if xv == 1:
                return mp.mpf(0)
            return mp.ln(xv) ** w.weight / mp.factorial(w.weight)
        ztl = _zeros_then_letter(w)
        if ztl is not None:
            m, letter = ztl
            if xv == 1 and (m == 0 or letter.k == 1):
                if letter.k == 1:
                    raise DivergentValueError(f"{w} divergent at x = 1")
                return mp.quad(lambda t: letter(t), [0, 1])
            return eval_zeros_then_letter(m, letter.k, letter.l, xv, prec)
        aprime = all(a in APRIME for a in w.letters)
        if aprime and xv <= mp.mpf("0.95"):
            return eval_expansion(w, xv, prec)
        if aprime and not _word_has_letter_k(w, 1):
            t0, coeffs = _taylor_model(w, prec)
            u = xv - t0
            acc = mp.mpf(0)
            for c in reversed(coeffs):
                acc = acc * u + c
            return acc
        if not aprime and xv <= mp.mpf("0.95"):
            return _eval_general_series(w, xv, prec)
        if aprime and xv < 1:
            # f_1-bearing word close to 1: series still converges, just slowly
            est = int((prec + 8) * mp.ln(10) / (-2 * mp.ln(xv))) + 50
            if est < 150_000:
                return eval_expansion(w, xv, prec, max_terms=2 * est)
        # general fallback: one more quadrature level
        return eval_hpl_quadrature(w, xv, prec)


@lru_cache(maxsize=None)
def _general_coeffs(letters: tuple[Letter, ...], length: int) -> tuple:
    """Series coefficients of C_w, indexed so entry q is the coefficient of
    x^(q+1).  Requires a word with no trailing zero letter (those carry log
    terms and are peeled off by the caller)."""
    if len(letters) == 1:
        b = letter_series(letters[0].k, letters[0].l, length)
        return tuple(Fraction(b[q], q + 1) for q in range(length))
    inner = _general_coeffs(letters[1:], length)
    a = letters[0]
    if a == Letter(0, 0):
        # multiply by 1/x then integrate: coefficient of x^(q+1) gets /(q+1)
        return tuple(inner[q] / (q + 1) for q in range(length))
    b = letter_series(a.k, a.l, length)
    ip = [Fraction(0)] * length  # integrand coefficient of x^p
    for i, bi in enumerate(b):
        if not bi:
            continue
        for j in range(length - i - 1):
            ip[i + j + 1] += bi * inner[j]
    return tuple(ip[q] / (q + 1) for q in range(length))


def _eval_general_series(w: Word, xv, prec: int):
    """Direct series for words over arbitrary letters; trailing zero letters
    are peeled through the shuffle algebra first."""
    from .words import shuffle

    letters = w.letters
    if letters and letters[-1] == Letter(0, 0) and any(a != Letter(0, 0) for a in letters):
        u = Word(letters[:-1])
        sh = shuffle(u, Word((Letter(0, 0),)))
        mult_self = sh[w]
        total = mp.ln(xv) * _eval_general_series_or_log(u, xv, prec)
        for word2, mult in sh:
            if word2 != w:
                total -= _frac(mult) * _eval_general_series_or_log(word2, xv, prec)
        return total / _frac(mult_self)
    need = max(80, int((prec + 8) * mp.ln(10) / (-mp.ln(xv))) + 40)
    coeffs = _general_coeffs(letters, need)
    total = mp.mpf(0)
    xp = mp.mpf(1)
    for q, c in enumerate(coeffs):
        xp *= xv
        if c:
            total += _frac(c) * xp
    return total


def _eval_general_series_or_log(w: Word, xv, prec: int):
    if all(a == Letter(0, 0) for a in w.letters):
        return mp.ln(xv) ** w.weight / mp.factorial(w.weight)
    return _eval_general_series(w, xv, prec)


def eval_hpl_quadrature(w: Word, x, prec: int = 30):
    """Nested tanh-sinh quadrature for C_w(x), 0 < x <= 1.

    Divergent words at x = 1 (leading 1/(x-1) kernel with a non-vanishing
    inner value) are rejected.
    """
    with mp.workdps(prec + _GUARD):
        xv = _to_mpf(x)
        if not (0 < xv <= 1):
            raise ValueError("need 0 < x <= 1")
        if w.is_empty():
            return mp.mpf(1)
        if all(a == Letter(0, 0) for a in w.letters):
            if xv == 1:
                return mp.mpf(0)
            return mp.ln(xv) ** w.weight / mp.factorial(w.weight)
        head, rest = w.letters[0], Word(w.letters[1:])
        if xv == 1 and head.k == 1:
            inner_at_1 = None
            try:
                inner_at_1 = hpl_value(rest, mp.mpf(1), min(prec, 20)) if rest.weight else mp.mpf(1)
            except DivergentValueError:
                raise DivergentValueError(f"{w} divergent at x = 1")
            if inner_at_1 is not None and abs(inner_at_1) > mp.mpf(10) ** (-min(prec, 20) // 2):
                raise DivergentValueError(f"{w} divergent at x = 1")

        def integrand(t):
            inner = hpl_value(rest, t, prec + 4) if rest.weight else mp.mpf(1)
            return head(t) * inner

        val = mp.quad(integrand, [0, xv])
        return +val


# --- phi_k(l, N): Mellin transforms of the letters ---------------------------

_phi_cache: dict = {}


def _phi_table(k: int, upto: int, dps: int):
    """phi_k(0, M) for M = 0..upto via the difference equation of Phi_k,
    from exact digamma-valued initial moments."""
    key = (k, dps)
    tab = _phi_cache.get(key, [])
    if len(tab) > upto:
        return tab
    phi = cyclotomic(k)
    d = phi.degree
    c = phi.coeffs
    with mp.workdps(dps):
        if not tab:
            tab = [phi_initial_moment(k, j, dps) for j in range(d)]
        while len(tab) <= upto:
            M = len(tab) - d
            # sum_n c_n phi(M + n) = 1/(M+1), leading coefficient 1
            val = 1 / mp.mpf(M + 1)
            for n in range(d):
                val -= c[n] * tab[M + n]
            tab.append(val)
    _phi_cache[key] = tab
    return tab


def phi_initial_moment(k: int, M: int, dps: int):
    """Exact moment integral(0..1) x^M / Phi_k(x) dx as a digamma combination
    of the periodic series coefficients."""
    if k == 1:
        raise DivergentValueError("phi_1 diverges without +-regularization")
    with mp.workdps(dps + 8):
        coeffs, start = _letter_periodic_data(k, 0)
        total = mp.mpf(0)
        # explicit transient
        for q in range(start):
            if coeffs[q]:
                total += mp.mpf(coeffs[q]) / (q + M + 1)
        # periodic tail: classes q = start + r + k j, coefficient sum is zero
        period = [coeffs[start + r] for r in range(k)]
        assert sum(period) == 0
        for r in range(k):
            if period[r]:
                a = mp.mpf(start + r + M + 1) / k
                total += period[r] * (-mp.psi(0, a) / k)
        return +total


def phi(k: int, l: int, N: int, prec: int = 30, plus: bool = False):
    """phi_k(l, N) = integral(0..1) x^(N+l)/Phi_k(x) dx, by forward
    recurrence from exact initial moments; the plus flag subtracts the N = 0
    value, i.e. uses the kernel (x^N - 1).

    phi_1 exists only in the plus-regularized form, where it equals
    S_1(N + l) - S_1(l) exactly.
    """
    if k < 1 or l < 0 or N < 0:
        raise ValueError("need k >= 1, l >= 0, N >= 0")
    dps = prec + _GUARD
    if k == 1:
        if not plus:
            raise DivergentValueError("phi_1 requires plus-regularization")
        with mp.workdps(dps):
            return mp.fsum(1 / mp.mpf(j + l + 1) for j in range(N))
    tab = _phi_table(k, N + l, dps)
    with mp.workdps(dps):
        val = tab[N + l]
        if plus:
            val = val - tab[l]
        return +val


def phi_quadrature(k: int, l: int, N: int, prec: int = 30, plus: bool = False):
    """Direct quadrature of the defining integral (cross-check oracle)."""
    with mp.workdps(prec + _GUARD):
        if k == 1:
            if not plus:
                raise DivergentValueError("phi_1 requires plus-regularization")
            return mp.quad(lambda x: (x**N - 1) * x**l / (x - 1), [0, 1])
        den = cyclotomic(k)
        if plus:
            return mp.quad(lambda x: (x**N - 1) * x**l / den(x), [0, 1])
        return mp.quad(lambda x: x ** (N + l) / den(x), [0, 1])


# --- asymptotic expansions ----------------------------------------------------

F = Fraction

# printed inverse-power coefficients {power: coefficient} of phi_k(l, N)
PHI_ASYMPTOTIC: dict[tuple[int, int], dict[int, Fraction]] = {
    (1, 0): {1: F(1, 2), 2: F(-1, 12), 4: F(1, 120), 6: F(-1, 252), 8: F(1, 240),
             10: F(-1, 132), 12: F(691, 32760)},
    (2, 0): {1: F(1, 2), 2: F(-1, 4), 4: F(1, 8), 6: F(-1, 4), 8: F(17, 16),
             10: F(-31, 4), 12: F(691, 8)},
    (3, 0): {1: F(1, 3), 3: F(-2, 9), 5: F(2, 3), 7: F(-14, 3), 9: F(1618, 27),
             11: F(-3694, 3)},
    (4, 0): {1: F(1, 2), 3: F(-1, 2), 5: F(5, 2), 7: F(-61, 2), 9: F(1385, 2),
             11: F(-50521, 2)},
    (5, 0): {1: F(1, 5), 2: F(1, 5), 3: F(-1, 5), 4: F(-1), 5: F(31, 25),
             6: F(67, 5), 7: F(-109, 5), 8: F(-361), 9: F(3779, 5),
             10: F(412751, 25), 11: F(-214093, 5), 12: F(-1150921)},
    (6, 0): {1: F(1), 3: F(-2), 5: F(22), 7: F(-602), 9: F(30742), 11: F(-2523002)},
    (7, 0): {1: F(1, 7), 2: F(2, 7), 4: F(-16, 7), 5: F(-12, 7), 6: F(56),
             7: F(3900, 49), 8: F(-20296, 7), 9: F(-5796), 10: F(1809992, 7),
             11: F(4582500, 7), 12: F(-35282968)},
    (8, 0): {1: F(1, 2), 2: F(1, 2), 3: F(-3, 2), 4: F(-11, 2), 5: F(57, 2),
             6: F(361, 2), 7: F(-2763, 2), 8: F(-24611, 2), 9: F(250737, 2),
             10: F(2873041, 2), 11: F(-36581523, 2), 12: F(-512343611, 2)},
    (9, 0): {1: F(1, 3), 2: F(2, 3), 3: F(-2, 3), 4: F(-28, 3), 5: F(34, 3),
             6: F(1172, 3), 7: F(-1862, 3), 8: F(-101428, 3), 9: F(207394, 3),
             10: F(14999012, 3), 11: F(-37996022, 3), 12: F(-3386034628, 3)},
    (10, 0): {1: F(1), 2: F(1), 3: F(-5), 4: F(-17), 5: F(151), 6: F(871),
              7: F(-11465), 8: F(-92777), 9: F(1626151), 10: F(16922791),
              11: F(-370714025), 12: F(-4715323337)},
    (11, 0): {1: F(1, 11), 2: F(4, 11), 3: F(6, 11), 4: F(-56, 11), 5: F(-282, 11),
              6: F(3064, 11), 7: F(26646, 11), 8: F(-382616, 11), 9: F(-4592442, 11),
              10: F(7618184), 11: F(13945859346, 121), 12: F(-28200213176, 11)},
    (12, 0): {1: F(1), 2: F(1), 3: F(-7), 4: F(-23), 5: F(305), 6: F(1681),
              7: F(-33367), 8: F(-257543), 9: F(6815585), 10: F(67637281),
              11: F(-2237423527), 12: F(-27138236663)},
    (5, 2): {1: F(1, 5), 3: F(-2, 5), 5: F(86, 25), 7: F(-338, 5), 9: F(12094, 5),
             11: F(-690866, 5)},
    (8, 2): {1: F(1, 2), 3: F(-2), 5: F(40), 7: F(-1952), 9: F(177280),
             11: F(-25866752)},
    (10, 1): {1: F(1), 2: F(1), 3: F(-5), 4: F(-17), 5: F(151), 6: F(871),
              7: F(-11465), 8: F(-92777), 9: F(1626151), 10: F(16922791),
              11: F(-370714025), 12: F(-4715323337)},
    (10, 2): {1: F(1), 3: F(-6), 5: F(186), 7: F(-14166), 9: F(2009946),
              11: F(-458225526)},
}


def phi_asymptotic(k: int, l: int, N, order: int = 12, prec: int = 30):
    """Truncated large-N expansion of phi_k(l, N) from the stored exact
    coefficients; phi_1 additionally carries gamma + ln(N)."""
    if order < 1 or order > 12:
        raise ValueError("order must be 1..12")
    coeffs = PHI_ASYMPTOTIC.get((k, l))
    if coeffs is None:
        raise ValueError(f"no stored expansion for phi_{k} with l = {l}")
    with mp.workdps(prec + _GUARD):
        Nv = _to_mpf(N)
        total = mp.mpf(0)
        if (k, l) == (1, 0):
            total += mp.euler + mp.ln(Nv)
        for p, c in coeffs.items():
            if p <= order:
                total += _frac(c) / Nv**p
        return +total


# --- worked-example verification ----------------------------------------------

def _letters_bracket_a(x):
    """6 + f_1^0 - f_2^0 - 2 f_3^0 - f_3^1 - 2 f_6^0 + f_6^1 at x."""
    f3 = cyclotomic(3)(x)
    f6 = cyclotomic(6)(x)
    return 6 + 1 / (x - 1) - 1 / (x + 1) - 2 / f3 - x / f3 - 2 / f6 + x / f6


def _letters_bracket_b(x):
    """3 - f_4^0 - 2 f_12^0 + f_12^2 at x, i.e. 3*(1 - 1/(x^6+1))."""
    f4 = cyclotomic(4)(x)
    f12 = cyclotomic(12)(x)
    return 3 - 1 / f4 - 2 / f12 + x * x / f12


def _c_combo(x, prec: int):
    """C combination entering the worked example: the weight-2 words pairing
    a log letter with f_4^0, f_12^0, f_12^2 respectively."""
    a = eval_zeros_then_letter(1, 4, 0, x, prec)
    b = eval_zeros_then_letter(1, 12, 0, x, prec)
    c = eval_zeros_then_letter(1, 12, 2, x, prec)
    return a - b + 2 * c


def mellin_rhs_ex2(N: int, prec: int = 20):
    """The Mellin-transform representation of S_{3,2,2},{2,1,1}(1,-1;N):
    four pieces, built from the two partial-fraction brackets, the weight-2
    log-letter words at argument x, and their values at 1.

    Derived by the integral-representation / rescaling / integration-by-parts
    procedure; two misprints of the published display (the f_12^2
    coefficient in the second bracket and the constant multiplying the pure
    log piece) are corrected here, which this package's tests pin down
    numerically against exact summation.
    """
    with mp.workdps(prec + _GUARD):
        sgn = -1 if N % 2 else 1

        def kappa(x):
            return sgn * x ** (6 * N) - 1

        j_ln = mp.quad(lambda x: mp.ln(x) * x**3 * kappa(x) * _letters_bracket_b(x), [0, 1])
        j_0 = mp.quad(lambda x: x**3 * kappa(x) * _letters_bracket_b(x), [0, 1])
        j_c = mp.quad(lambda x: x**3 * kappa(x) * _c_combo(x, prec + 2) * _letters_bracket_b(x), [0, 1])
        k_const = _c_combo(mp.mpf(1), prec + 4)
        # integral(0..1) x^4/(x^6+1) = (1/3)[C_4^0(1) - C_12^0(1) + 2 C_12^2(1)]
        h_one = mp.quad(lambda x: x**4 / (x**6 + 1), [0, 1])
        b_piece = (
            mp.mpf(1)
            / 6
            * (4 - mp.pi)
            * mp.quad(lambda x: mp.ln(x) * x**3 * (x ** (6 * N) - 1) * _letters_bracket_a(x), [0, 1])
        )
        return +(-4 * h_one * j_ln - mp.mpf(4) / 3 * k_const * j_0 + mp.mpf(4) / 3 * j_c + b_piece)


def verify_ex2(N: int, prec: int = 20, tol: float = 1e-12) -> bool:
    """Check the worked Mellin representation of the depth-2 sum
    S_{3,2,2},{2,1,1}(1,-1;N) against exact nested summation."""
    from .sums import SumIndex, eval_sum_definition

    if N < 1:
        raise ValueError("N >= 1")
    exact = eval_sum_definition(SumIndex.of((3, 2, 2), (2, 1, -1)), N)
    with mp.workdps(prec + _GUARD):
        err = abs(mellin_rhs_ex2(N, prec) - _frac(exact))
        return err < mp.mpf(tol)


# --- asymptotic expansions of two depth-2 sums ---------------------------------

# inverse-power coefficients of the smooth and oscillating parts
_NESTED_FIXTURES = {
    "example1": {
        "index": ((2, 1, 2), (1, 0, -2)),
        "smooth": {1: F(-1), 2: F(1), 3: F(-11, 12), 4: F(3, 4), 5: F(-127, 240),
                   6: F(5, 16), 7: F(-221, 1344), 8: F(7, 64), 9: F(-367, 3840),
                   10: F(9, 256)},
        "osc": {4: F(1, 16), 5: F(-1, 4), 6: F(27, 64), 7: F(-1, 32),
                8: F(-269, 256), 9: F(-11, 32), 10: F(8699, 1024)},
    },
    "example2": {
        "index": ((2, 1, 2), (2, 1, -2)),
        "smooth": {1: F(1, 4), 2: F(-1, 4), 3: F(11, 48), 4: F(-3, 16),
                   5: F(127, 960), 6: F(-5, 64), 7: F(221, 5376), 8: F(-7, 256),
                   9: F(367, 15360), 10: F(-9, 1024)},
        "osc": {4: F(1, 64), 5: F(-5, 64), 6: F(25, 128), 7: F(-61, 256),
                8: F(-77, 1024), 9: F(221, 512), 10: F(1545, 1024)},
    },
}


def _fixture_constants(prec: int):
    from .constants import hpl_at_one
    from .words import Word

    W = Word.of
    return {
        "A": hpl_at_one(W((4, 0), (0, 0)), prec),          # = -Catalan
        "B": hpl_at_one(W((4, 0)), prec),                  # = pi/4
        "D": hpl_at_one(W((0, 0), (4, 0), (0, 0)), prec),
        "E": hpl_at_one(W((4, 0), (0, 0), (4, 0), (0, 0)), prec),
        "F": hpl_at_one(W((4, 1), (0, 0)), prec),          # = -pi^2/48
        "G": hpl_at_one(W((0, 0), (4, 1), (0, 0)), prec),
        "H": hpl_at_one(W((4, 0), (0, 0), (4, 1), (0, 0)), prec),
    }


def nested_asymptotic_fixtures(name: str, N: int, order: int = 10, prec: int = 30):
    """Large-N value of the two stored depth-2 expansions; the constants are
    weight <= 4 word values at 1 resolved through the sigma machinery."""
    fix = _NESTED_FIXTURES.get(name)
    if fix is None:
        raise ValueError(f"unknown fixture {name!r} (use example1 or example2)")
    if not (1 <= order <= 10):
        raise ValueError("order must be 1..10")
    c = _fixture_constants(prec)
    with mp.workdps(prec + _GUARD):
        Nv = mp.mpf(N)
        smooth = mp.fsum(
            _frac(v) / Nv**p for p, v in fix["smooth"].items() if p <= order
        )
        osc = mp.fsum(_frac(v) / Nv**p for p, v in fix["osc"].items() if p <= order)
        sgn = mp.mpf(-1) ** N
        if name == "example1":
            const = 4 * c["A"] ** 2 + 4 * c["B"] * c["D"] - 4 * c["E"]
            return +(const + (mp.pi**2 / 2 + smooth) * c["F"] + sgn * osc)
        const = (
            -mp.pi**2 / 8
            + c["B"] * c["G"]
            - c["H"]
            + c["A"] * (c["F"] - mp.pi**2 / 8)
        )
        return +(const + (1 + c["A"]) * smooth + sgn * osc)


def nested_fixture_index(name: str):
    from .sums import SumIndex

    fix = _NESTED_FIXTURES.get(name)
    if fix is None:
        raise ValueError(f"unknown fixture {name!r}")
    return SumIndex.of(*fix["index"])
