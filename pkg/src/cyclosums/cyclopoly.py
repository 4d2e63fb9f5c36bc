"""Exact cyclotomic polynomial arithmetic and partial-fraction machinery.

Polynomials are dense lists of Python ints (index = power of x), so all
arithmetic is exact at any degree.  Cyclotomic polynomials are memoized;
everything downstream (alphabet letters, (x^l +/- 1) factorizations,
partial fractions of 1/(x^l +/- 1)) is built on them.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class IntPolynomial:
    """Dense univariate polynomial with exact integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(int(x) for x in c)

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * power + [coeff])

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return IntPolynomial(a)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    def divmod_exact(self, other: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Long division; requires the divisor to be monic (which every
        cyclotomic polynomial is), so the quotient stays integral."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if other.coeffs[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        q = [0] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        while len(rem) - 1 >= d and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            coef = rem[-1]
            q[k] = coef
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= coef * b
        return IntPolynomial(q), IntPolynomial(rem)

    def __floordiv__(self, other: "IntPolynomial") -> "IntPolynomial":
        q, r = self.divmod_exact(other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def __call__(self, x):
        """Horner evaluation; works for int, Fraction, mpf, mpc inputs."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_neg(self) -> "IntPolynomial":
        """Return p(-x)."""
        return IntPolynomial([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    def __repr__(self):
        return f"IntPolynomial({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            term = "x" if i == 1 else f"x^{i}" if i > 1 else ""
            mag = abs(c)
            body = term if (mag == 1 and i > 0) else (f"{mag}{term}" if i > 0 else f"{mag}")
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


ONE = IntPolynomial([1])
X = IntPolynomial([0, 1])


def xn_minus_1(n: int) -> IntPolynomial:
    return IntPolynomial([-1] + [0] * (n - 1) + [1])


def xn_plus_1(n: int) -> IntPolynomial:
    return IntPolynomial([1] + [0] * (n - 1) + [1])


@lru_cache(maxsize=None)
def _factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization by trial division, as (prime, exponent) pairs."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n: int) -> dict[int, int]:
    return dict(_factorize(n))


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, e in _factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def totient(n: int) -> int:
    """Euler's totient function."""
    if n < 1:
        raise ValueError("n must be positive")
    out = n
    for p, _ in _factorize(n):
        out = out // p * (p - 1)
    return out


def moebius(n: int) -> int:
    """Moebius function mu(n) in {-1, 0, 1}."""
    if n < 1:
        raise ValueError("n must be positive")
    fac = _factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


_cyclo_cache: dict[int, IntPolynomial] = {}
_cyclo_lock = threading.Lock()


def cyclotomic(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, by exact recursive division of
    x^n - 1 by the product of the lower-index factors."""
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    with _cyclo_lock:
        got = _cyclo_cache.get(n)
    if got is not None:
        return got
    if n == 1:
        poly = IntPolynomial([-1, 1])
    else:
        den = ONE
        for d in divisors(n):
            if d < n:
                den = den * cyclotomic(d)
        poly = xn_minus_1(n) // den
    with _cyclo_lock:
        _cyclo_cache[n] = poly
    return poly


def factor_xn_minus_1(l: int) -> list[int]:
    """Cyclotomic indices with x^l - 1 = prod Phi_k: all divisors of l."""
    if l < 1:
        raise ValueError("l must be positive")
    return divisors(l)


def factor_xn_plus_1(l: int) -> list[int]:
    """Cyclotomic indices with x^l + 1 = prod Phi_k: divisors of 2l
    that do not divide l."""
    if l < 1:
        raise ValueError("l must be positive")
    return [d for d in divisors(2 * l) if l % d != 0]


@dataclass(frozen=True, order=True)
class Letter:
    """Alphabet element f_k^l(x) = x^l / Phi_k(x); (0, 0) encodes 1/x.

    The order (k, l) lexicographic with f_0^0 smallest fixes the letter
    order used for Lyndon bases.
    """

    k: int
    l: int = 0

    def __post_init__(self):
        if self.k == 0:
            if self.l != 0:
                raise ValueError("the 1/x letter is (0, 0)")
        else:
            if self.k < 1 or self.l < 0:
                raise ValueError("letter indices out of range")
            bound = max(1, totient(self.k))
            if self.l >= bound:
                raise ValueError(f"need l < phi({self.k}) = {bound}, got {self.l}")

    def __str__(self):
        return f"f_{self.k}^{self.l}"

    def denominator(self) -> IntPolynomial:
        if self.k == 0:
            return X
        return cyclotomic(self.k)

    def __call__(self, x):
        """Evaluate x^l / Phi_k(x) numerically."""
        if self.k == 0:
            return 1 / x
        return x**self.l / self.denominator()(x)


class RatPoly:
    """Polynomial with exact Fraction coefficients (partial-fraction helper)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = [Fraction(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = c

    @classmethod
    def from_int(cls, p: IntPolynomial) -> "RatPoly":
        return cls(list(p.coeffs))

    def __mul__(self, other: "RatPoly") -> "RatPoly":
        if not self.coeffs or not other.coeffs:
            return RatPoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly(out)

    def scale(self, c) -> "RatPoly":
        return RatPoly([a * c for a in self.coeffs])

    def add(self, other: "RatPoly") -> "RatPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            out[i] += a
        for i, b in enumerate(other.coeffs):
            out[i] += b
        return RatPoly(out)


def partial_fraction_inverse(sign: int, l: int) -> dict[Letter, Fraction]:
    """Exact letter decomposition of 1/(x^l - 1) (sign=-1) or 1/(x^l + 1)
    (sign=+1).

    Solved as a linear system over the rationals for the letter
    coefficients, then re-verified by exact common-denominator
    reconstruction.
    """
    if l < 1:
        raise ValueError("l must be positive")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    indices = factor_xn_plus_1(l) if sign == 1 else factor_xn_minus_1(l)
    letters: list[Letter] = []
    for k in indices:
        for m in range(max(1, totient(k))):
            letters.append(Letter(k, m))

    target = xn_plus_1(l) if sign == 1 else xn_minus_1(l)
    # numerators: target / Phi_k * x^m, one per letter; solve sum c_i num_i = 1
    cols = []
    for let in letters:
        num = target // cyclotomic(let.k)
        cols.append(RatPoly.from_int(IntPolynomial.monomial(let.l) * num))
    n = l  # all numerators have degree < l
    mat = [[cols[j].coeffs[i] if i < len(cols[j].coeffs) else Fraction(0) for j in range(len(cols))] for i in range(n)]
    rhs = [Fraction(1)] + [Fraction(0)] * (n - 1)
    sol = _solve_exact(mat, rhs)

    out = {let: c for let, c in zip(letters, sol) if c != 0}
    # exact reconstruction check
    acc = RatPoly([])
    for let, c in out.items():
        acc = acc.add(RatPoly.from_int(IntPolynomial.monomial(let.l) * (target // cyclotomic(let.k))).scale(c))
    if acc.coeffs != [Fraction(1)]:
        raise AssertionError("partial fraction reconstruction failed")
    return out


def _solve_exact(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination over Fraction; the system must be square-solvable."""
    n = len(mat)
    m = len(mat[0])
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    piv_cols = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if a[i][m] != 0:
            raise ValueError("inconsistent linear system")
    sol = [Fraction(0)] * m
    for i, c in enumerate(piv_cols):
        sol[c] = a[i][m]
    return sol
