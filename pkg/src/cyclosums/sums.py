"""Cyclotomic harmonic sums: exact evaluation, quasi-shuffle product,
synchronization and duplication relations, and the basis counting formulas
for the four-summand family 1/k, (-1)^k/k, 1/(2k+1), (-1)^k/(2k+1).

A sum index is an ordered list of signed triples (a, b, c, s): the sum
iterates s^k / (a*k + b)^c from the outside in, innermost sums evaluated at
the running outer index.  Evaluation is exact over the rationals and serves
as the ground-truth oracle for every identity in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .cyclopoly import divisors, moebius
from .words import LinComb


@dataclass(frozen=True, order=True)
class Triple:
    """One layer s^k/(a k + b)^c. The sign s is +1 or -1."""

    a: int
    b: int
    c: int
    s: int = 1

    def __post_init__(self):
        if self.a < 1 or self.c < 1 or self.s not in (1, -1):
            raise ValueError(f"bad triple {(self.a, self.b, self.c, self.s)}")
        if self.b <= -self.a:
            # keeps every denominator a*k + b positive for k >= 1
            raise ValueError(f"need b > -a, got {(self.a, self.b)}")

    @property
    def signed_c(self) -> int:
        return self.s * self.c

    def is_normalized(self) -> bool:
        return 0 <= self.b < self.a

    def __str__(self):
        return f"{{{self.a},{self.b},{self.signed_c}}}"


@dataclass(frozen=True, order=True)
class SumIndex:
    triples: tuple[Triple, ...]

    def __post_init__(self):
        object.__setattr__(self, "triples", tuple(self.triples))
        if not self.triples:
            raise ValueError("empty sum index (the empty sum is the constant 1)")

    @classmethod
    def of(cls, *spec: tuple[int, int, int]) -> "SumIndex":
        """Build from (a, b, signed_c) triples, e.g. of((2, 1, -1))."""
        trs = []
        for a, b, sc in spec:
            if sc == 0:
                raise ValueError("signed c must be nonzero")
            trs.append(Triple(a, b, abs(sc), 1 if sc > 0 else -1))
        return cls(tuple(trs))

    @property
    def depth(self) -> int:
        return len(self.triples)

    @property
    def weight(self) -> int:
        return sum(t.c for t in self.triples)

    def is_normalized(self) -> bool:
        """True when every layer satisfies the 0 <= b < a normalization.
        Duplication/synchronization outputs may be raw (shifted b)."""
        return all(t.is_normalized() for t in self.triples)

    def is_divergent_limit(self) -> bool:
        """True when the N -> infinity limit diverges (leading c=1, s=+1)."""
        t = self.triples[0]
        return t.c == 1 and t.s == 1

    def head(self) -> Triple:
        return self.triples[0]

    def tail(self) -> "SumIndex | None":
        if len(self.triples) == 1:
            return None
        return SumIndex(self.triples[1:])

    def prepend(self, t: Triple) -> "SumIndex":
        return SumIndex((t,) + self.triples)

    def __str__(self):
        return "S[" + ",".join(str(t) for t in self.triples) + "]"

    def __repr__(self):
        return str(self)


def eval_sum_definition(idx: SumIndex, N: int) -> Fraction:
    """Exact nested summation, the module-wide brute-force oracle.

    Computed bottom-up in one pass over k so a depth-d evaluation costs
    O(N*d) Fraction operations.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    if N == 0:
        return Fraction(0)
    d = len(idx.triples)
    # vals[i] = S over suffix starting at layer i, at the current argument
    vals = [Fraction(0)] * (d + 1)
    vals[d] = Fraction(1)  # empty sum
    partial = [Fraction(0)] * d
    for k in range(1, N + 1):
        # innermost first: suffix i uses the value of suffix i+1 at the same k
        for i in range(d - 1, -1, -1):
            t = idx.triples[i]
            sgn = 1 if t.s == 1 or k % 2 == 0 else -1
            partial[i] += Fraction(sgn, (t.a * k + t.b) ** t.c) * vals[i + 1]
            vals[i] = partial[i]
    return vals[0]


def eval_lincomb(comb_: LinComb[SumIndex], N: int) -> Fraction:
    return sum((c * eval_sum_definition(t, N) for t, c in comb_), Fraction(0))


def denom_product(t1: Triple, t2: Triple) -> list[tuple[Fraction, int, int, int]]:
    """Exact partial fractions of 1/((a1 i + b1)^c1 (a2 i + b2)^c2) as a
    list of (coefficient, a, b, c) single-pole terms.

    Uses the generic binomial-weighted expansion, with the collapse case
    a1 b2 = a2 b1 handled separately.
    """
    from math import gcd

    a1, b1, c1 = t1.a, t1.b, t1.c
    a2, b2, c2 = t2.a, t2.b, t2.c
    if a1 * b2 == a2 * b1:
        # proportional denominators; canonicalize onto the primitive (a, b)
        # so the merge is symmetric in its arguments
        g1 = gcd(a1, abs(b1))
        coeff = Fraction(1, g1**c1) * Fraction(1, gcd(a2, abs(b2)) ** c2)
        return [(coeff, a1 // g1, b1 // g1, c1 + c2)]
    out: list[tuple[Fraction, int, int, int]] = []
    d12 = Fraction(a1 * b2 - a2 * b1)
    for j in range(1, c1 + 1):
        coeff = (
            Fraction((-1) ** (c1 + j))
            * comb(c1 + c2 - j - 1, c2 - 1)
            * Fraction(a1**c2 * a2 ** (c1 - j))
            / d12 ** (c1 + c2 - j)
        )
        out.append((coeff, a1, b1, j))
    for j in range(1, c2 + 1):
        coeff = (
            Fraction((-1) ** (c2 + j))
            * comb(c1 + c2 - j - 1, c1 - 1)
            * Fraction(a2**c1 * a1 ** (c2 - j))
            / (-d12) ** (c1 + c2 - j)
        )
        out.append((coeff, a2, b2, j))
    return out


_stuffle_cache: dict[tuple, LinComb] = {}


def stuffle(s1: SumIndex, s2: SumIndex) -> LinComb[SumIndex]:
    """Quasi-shuffle product: S_{s1}(N) * S_{s2}(N) = sum coeff * S_t(N)."""
    raw = _stuffle(s1.triples, s2.triples)
    return LinComb([(SumIndex(t), c) for t, c in raw])


def _stuffle(t1s: tuple, t2s: tuple) -> LinComb:
    """Quasi-shuffle on raw triple tuples; the empty tuple is the unit."""
    if not t1s:
        return LinComb.single(t2s)
    if not t2s:
        return LinComb.single(t1s)
    key = (t1s, t2s)
    got = _stuffle_cache.get(key)
    if got is not None:
        return got
    t1, t2 = t1s[0], t2s[0]
    out = LinComb()
    # sum_i term1(i) * [S_{rest1}(i) S_{s2}(i)]  and vice versa
    for tup, c in _stuffle(t1s[1:], t2s):
        out = out + LinComb.single((t1,) + tup, c)
    for tup, c in _stuffle(t1s, t2s[1:]):
        out = out + LinComb.single((t2,) + tup, c)
    # diagonal correction: - sum_i term1(i) term2(i) [S_{rest1}(i) S_{rest2}(i)]
    cross_sign = t1.s * t2.s
    inner = _stuffle(t1s[1:], t2s[1:])
    for coeff, a, b, c in denom_product(t1, t2):
        head = Triple(a, b, c, cross_sign)
        for tup, cf in inner:
            out = out - LinComb.single((head,) + tup, coeff * cf)
    _stuffle_cache[key] = out
    return out


# --- multiple-argument relations -------------------------------------------

# Internal representation for a function of j of the form
#   coeff * [v^j / (D j + E)^F] * S_T(j)
# with the pole factor optional; used while expanding S_A(k j - i).
_Term = tuple[Fraction, tuple[int, int, int, int] | None, tuple[Triple, ...]]


def _merge_pole_into_sum(
    coeff: Fraction, v: int, D: int, E: int, F: int, tail: tuple[Triple, ...]
) -> tuple[Fraction, tuple[Triple, ...]]:
    """Absorb an explicit pole factor as the head layer of a sum index."""
    return coeff, (Triple(D, E, F, v),) + tail


def _expand_shift(triples: tuple[Triple, ...], k: int, i: int) -> list[_Term]:
    """Express j |-> S_A(k*j - i) (0 <= i < k) as a combination of sums at
    argument j, optionally times a single explicit pole factor."""
    if not triples:
        return [(Fraction(1), None, ())]
    t, rest = triples[0], triples[1:]
    sk = t.s**k
    out: list[_Term] = []
    # S_A(k j) part: split the outer index n = k j' - i'' and absorb
    for i2 in range(k):
        s_pref = Fraction(t.s**i2)  # s^{-i2} with s = +-1
        for c0, pole, tail in _expand_shift(rest, k, i2):
            if pole is None:
                head = Triple(k * t.a, t.b - t.a * i2, t.c, sk)
                out.append((c0 * s_pref, None, (head,) + tail))
            else:
                v, D, E, F = pole
                base = Triple(k * t.a, t.b - t.a * i2, t.c, 1)
                for pc, a_, b_, c_ in denom_product(base, Triple(D, E, F, 1)):
                    head = Triple(a_, b_, c_, sk * v)
                    out.append((c0 * s_pref * pc, None, (head,) + tail))
    # corrections: - sum_{i'=0}^{i-1} term(k j - i') S_rest(k j - i')
    for i1 in range(i):
        s_pref = Fraction(t.s**i1)
        for c0, pole, tail in _expand_shift(rest, k, i1):
            if pole is None:
                out.append((-c0 * s_pref, (sk, k * t.a, t.b - t.a * i1, t.c), tail))
            else:
                v, D, E, F = pole
                base = Triple(k * t.a, t.b - t.a * i1, t.c, 1)
                for pc, a_, b_, c_ in denom_product(base, Triple(D, E, F, 1)):
                    out.append((-c0 * s_pref * pc, (sk * v, a_, b_, c_), tail))
    return out


def synchronize(idx: SumIndex, k: int) -> LinComb[SumIndex]:
    """Multiple-argument relation: S_idx(k*N) as a combination of sums at
    argument N.  Exact for every N >= 0.

    Depth 1 reproduces the closed form
    S_{a,b,c}(kN) = sum_{i=0}^{k-1} s^i S_{ka, b-ai, s^k c}(N); higher depth
    recursively re-synchronizes the inner sums.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    out = LinComb()
    for coeff, pole, tail in _expand_shift(idx.triples, k, 0):
        assert pole is None  # i = 0 produces no leftover pole factors
        out = out + LinComb.single(SumIndex(tail), coeff)
    return out


@dataclass(frozen=True)
class Relation:
    """An identity  sum(lhs at argument lhs_mult*N) = sum(rhs at argument N)."""

    lhs: LinComb[SumIndex]
    rhs: LinComb[SumIndex]
    lhs_mult: int = 2

    def check(self, N: int) -> bool:
        left = sum((c * eval_sum_definition(t, self.lhs_mult * N) for t, c in self.lhs), Fraction(0))
        right = sum((c * eval_sum_definition(t, N) for t, c in self.rhs), Fraction(0))
        return left == right

    def residual(self, N: int) -> Fraction:
        left = sum((c * eval_sum_definition(t, self.lhs_mult * N) for t, c in self.lhs), Fraction(0))
        right = sum((c * eval_sum_definition(t, N) for t, c in self.rhs), Fraction(0))
        return left - right


def duplicate_h1(idx: SumIndex) -> Relation:
    """First duplication relation:
    sum over all sign vectors of S_{a_i, b_i, +-c_i}(2N) = 2^m S_{2a_i, b_i, c_i}(N).

    The input index supplies the (a_i, b_i, c_i) pattern; its own signs are
    immaterial since the left side runs over every sign assignment.
    """
    m = idx.depth
    lhs = LinComb()
    for mask in range(2**m):
        trs = tuple(
            Triple(t.a, t.b, t.c, -1 if (mask >> i) & 1 else 1)
            for i, t in enumerate(idx.triples)
        )
        lhs = lhs + LinComb.single(SumIndex(trs))
    rhs = LinComb.single(
        SumIndex(tuple(Triple(2 * t.a, t.b, t.c, 1) for t in idx.triples)), Fraction(2**m)
    )
    return Relation(lhs, rhs)


def duplicate_h2(idx: SumIndex) -> Relation:
    """Second duplication relation, sign-weighted on the left, with the
    half-integer shift b_i -> b_i - a_i on the right:
    sum d_1...d_m S_{a_i, b_i, d_i c_i}(2N) = 2^m S_{2a_i, b_i - a_i, c_i}(N)."""
    m = idx.depth
    lhs = LinComb()
    for mask in range(2**m):
        parity = -1 if bin(mask).count("1") % 2 else 1
        trs = tuple(
            Triple(t.a, t.b, t.c, -1 if (mask >> i) & 1 else 1)
            for i, t in enumerate(idx.triples)
        )
        lhs = lhs + LinComb.single(SumIndex(trs), Fraction(parity))
    rhs = LinComb.single(
        SumIndex(tuple(Triple(2 * t.a, t.b - t.a, t.c, 1) for t in idx.triples)),
        Fraction(2**m),
    )
    return Relation(lhs, rhs)


# --- Table 2 counting --------------------------------------------------------

_TABLE2_COLUMNS = (
    "NS",
    "H1",
    "H1H2",
    "H1M",
    "H1H2M",
    "D",
    "DH1H2M",
    "A",
    "AH1H2M",
    "AD",
    "ADH1H2M",
)


def _witt5(w: int) -> int:
    return sum(moebius(w // d) * 5**d for d in divisors(w)) // w


def _witt2(w: int) -> int:
    return sum(moebius(w // d) * 2**d for d in divisors(w)) // w


def count_table2(w: int, relations: frozenset[str] | set[str] | str) -> int:
    """Number of basis sums at weight w for the four-summand family after
    applying the given relation set.

    The eleven supported combinations are the tabulated ones: "" (plain
    count), and the keys A, D, H1, H1H2, H1M, H1H2M, AD, AH1H2M, DH1H2M,
    ADH1H2M.  Weight-1 values follow the table conventions (the 1/x letter
    carries no weight-1 sum).
    """
    if w < 1:
        raise ValueError("w must be >= 1")
    if isinstance(relations, str):
        key = relations.upper() if relations else "NS"
    else:
        key = "".join(s for s in ("A", "D", "H1", "H2", "M") if s in {r.upper() for r in relations}) or "NS"
    if key not in _TABLE2_COLUMNS:
        raise ValueError(f"unsupported relation combination {key!r}")

    ns = lambda v: 4 * 5 ** (v - 1) if v >= 1 else 0
    if key == "NS":
        return ns(w)
    if key == "A":
        return 4 if w == 1 else _witt5(w)
    if key == "D":
        return ns(w) - ns(w - 1)
    if key == "H1":
        return ns(w) - 2 ** (w - 1)
    if key == "H1H2":
        return ns(w) - (2 * 2 ** (w - 1) - 1)
    if key == "H1M":
        return ns(w) - 2 * 2 ** (w - 1)
    if key == "H1H2M":
        return ns(w) - (3 * 2 ** (w - 1) - 1)
    if key == "AD":
        a = lambda v: 4 if v == 1 else (_witt5(v) if v >= 1 else 0)
        return a(w) - a(w - 1)
    if key == "AH1H2M":
        return 2 if w == 1 else _witt5(w) - (3 * _witt2(w) - 1)
    if key == "DH1H2M":
        if w == 1:
            return 2
        h = lambda v: ns(v) - (3 * 2 ** (v - 1) - 1)
        return h(w) - h(w - 1)
    if key == "ADH1H2M":
        g = lambda v: 2 if v == 1 else _witt5(v) - (3 * _witt2(v) - 1)
        return g(w) - g(w - 1) if w >= 2 else 2
    raise AssertionError


def table2(max_w: int = 5) -> dict[int, dict[str, int]]:
    """The full counting table for weights 1..max_w, all eleven columns."""
    return {w: {col: count_table2(w, col) for col in _TABLE2_COLUMNS} for w in range(1, max_w + 1)}
