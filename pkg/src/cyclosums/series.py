"""Power-series engine for cyclotomic harmonic polylogarithms.

Two layers:

* ``series_expansion`` builds, for words over the five-letter alphabet
  {1/x, 1/(x-1), 1/(x+1), 1/(x^2+1), x/(x^2+1)}, the exact symbolic
  expansion  sum_j ln^j(x)/j! * [const_j + sum_i s^i x^(2i+c)/(2i+c)^a * S_n(i)]
  by the depth-lifting recursion rules (prefix sums of the inner series
  turn into one more nested-sum layer).  Trailing zero letters are peeled
  off first through the shuffle algebra, which is where the ln powers
  come from.

* ``eval_expansion`` sums such an expansion at x in (0, 1) with a rigorous
  geometric tail bound, maintaining the inner nested sums incrementally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .cyclopoly import Letter
from .words import LinComb, Word, shuffle
from .sums import Triple

APRIME = (Letter(0, 0), Letter(1, 0), Letter(2, 0), Letter(4, 0), Letter(4, 1))


@dataclass(frozen=True)
class Block:
    """One series block  sum_{i>=1} sign^i x^(2i+c) / (2i+c)^a * S_inner(i)."""

    sign: int
    c: int
    a: int
    inner: tuple[Triple, ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("block sign must be +-1")
        if 2 + self.c < 1:
            raise ValueError("block exponent 2i+c must be positive from i=1")


# expansion: {ln_power j: (constant, LinComb[Block])}
Expansion = dict[int, tuple[Fraction, LinComb]]


def _unit_expansion() -> Expansion:
    return {0: (Fraction(1), LinComb())}


_BASE_BLOCKS = {
    # C for a single letter, split into even/odd power blocks
    Letter(1, 0): [(Block(1, 0, 1), Fraction(-1)), (Block(1, -1, 1), Fraction(-1))],
    Letter(2, 0): [(Block(1, 0, 1), Fraction(-1)), (Block(1, -1, 1), Fraction(1))],
    Letter(4, 0): [(Block(-1, -1, 1), Fraction(-1))],
    Letter(4, 1): [(Block(-1, 0, 1), Fraction(-1))],
}


def _prepend_letter(letter: Letter, blocks: LinComb) -> LinComb:
    """Apply one integration step: blocks of C_w -> blocks of C_{letter+w}."""
    out = LinComb()
    for blk, q in blocks:
        if letter == Letter(0, 0):
            out = out + LinComb.single(Block(blk.sign, blk.c, blk.a + 1, blk.inner), q)
            continue
        # the prefix-sum step pushes the block data down as a new inner layer
        plus_inner = (Triple(2, blk.c, blk.a, blk.sign),) + blk.inner
        minus_inner = (Triple(2, blk.c, blk.a, -blk.sign),) + blk.inner
        if letter == Letter(2, 0):
            out = out + LinComb.single(Block(1, blk.c + 1, 1, plus_inner), q)
            out = out - LinComb.single(Block(1, blk.c + 2, 1, plus_inner), q)
        elif letter == Letter(1, 0):
            out = out - LinComb.single(Block(1, blk.c + 1, 1, plus_inner), q)
            out = out - LinComb.single(Block(1, blk.c + 2, 1, plus_inner), q)
        elif letter == Letter(4, 0):
            out = out + LinComb.single(Block(-1, blk.c + 1, 1, minus_inner), q)
        elif letter == Letter(4, 1):
            out = out + LinComb.single(Block(-1, blk.c + 2, 1, minus_inner), q)
        else:
            raise ValueError(f"letter {letter} outside the supported alphabet")
    return out


def _trailing_zeros(w: Word) -> int:
    n = 0
    for a in reversed(w.letters):
        if a != Letter(0, 0):
            break
        n += 1
    return n


@lru_cache(maxsize=None)
def _expansion_cached(letters: tuple[Letter, ...]) -> tuple[tuple[int, Fraction, tuple[tuple[Block, Fraction], ...]], ...]:
    exp = _series_expansion(Word(letters))
    return tuple(
        (j, const, tuple(blocks.terms.items())) for j, (const, blocks) in sorted(exp.items())
    )


def series_expansion(w: Word) -> Expansion:
    """Exact symbolic series data for a word over the five-letter alphabet."""
    out: Expansion = {}
    for j, const, items in _expansion_cached(w.letters):
        out[j] = (const, LinComb(dict(items)))
    return out


def _series_expansion(w: Word) -> Expansion:
    if w.is_empty():
        return _unit_expansion()
    for a in w.letters:
        if a not in APRIME:
            raise ValueError(f"letter {a} outside the supported alphabet")
    t = _trailing_zeros(w)
    if t == w.weight:
        # pure log power: ln^m(x)/m!
        return {w.weight: (Fraction(1), LinComb())}
    if t > 0:
        # peel one trailing zero via the shuffle algebra:
        # C_u * C_0 = C_w + (insertions of 0 elsewhere in u)
        u = Word(w.letters[:-1])
        out = _mul_log(series_expansion(u))
        sh = shuffle(u, Word((Letter(0, 0),)))
        for word2, mult in sh:
            if word2 == w:
                mult_self = mult
                break
        for word2, mult in sh:
            if word2 == w:
                continue
            out = _add_expansion(out, series_expansion(word2), -mult)
        return _scale_expansion(out, Fraction(1, mult_self))
    # zero-trail-free: build inward-out by prepending letters
    inner = series_expansion(Word(w.letters[1:])) if w.weight > 1 else _unit_expansion()
    if w.weight == 1:
        return {0: (Fraction(0), LinComb(dict(_BASE_BLOCKS[w.letters[0]])))}
    const0, blocks0 = inner.get(0, (Fraction(0), LinComb()))
    assert set(inner) <= {0} and const0 == 0, "zero-trail-free words have pure block expansions"
    return {0: (Fraction(0), _prepend_letter(w.letters[0], blocks0))}


def _mul_log(exp: Expansion) -> Expansion:
    """Multiply an expansion by ln(x): ln^j/j! -> (j+1) * ln^(j+1)/(j+1)!."""
    out: Expansion = {}
    for j, (const, blocks) in exp.items():
        out[j + 1] = (const * (j + 1), blocks.scale(j + 1))
    return out


def _add_expansion(a: Expansion, b: Expansion, coeff: Fraction | int = 1) -> Expansion:
    out: Expansion = dict(a)
    for j, (const, blocks) in b.items():
        c0, b0 = out.get(j, (Fraction(0), LinComb()))
        out[j] = (c0 + const * coeff, b0 + blocks.scale(coeff))
    return out


def _scale_expansion(a: Expansion, coeff: Fraction) -> Expansion:
    return {j: (const * coeff, blocks.scale(coeff)) for j, (const, blocks) in a.items()}


def blocks_sigma_indices(w: Word) -> LinComb:
    """At x = 1 the ln-power terms vanish; the value of the word is the plain
    block part evaluated at 1, a rational combination of infinite nested
    sums.  Returns a LinComb keyed by raw triple tuples (head layer from the
    block data, then the block's inner index)."""
    exp = series_expansion(w)
    const, blocks = exp.get(0, (Fraction(0), LinComb()))
    out = LinComb()
    for blk, q in blocks:
        head = Triple(2, blk.c, blk.a, blk.sign)
        out = out + LinComb.single((head,) + blk.inner, q)
    return out, const


def eval_expansion(w: Word, x, prec: int = 30, max_terms: int = 200_000):
    """Numerically sum the series expansion at 0 < x < 1.

    Tail control: |S_n(i)| <= (1 + ln i)^depth and the powers decay like
    x^(2i), so the remainder after M terms is below
    (1+ln M)^d * x^(2M+2+cmin) / ((2M+cmin)^amin * (1 - x^2)).
    """
    exp = series_expansion(w)
    with mp.workdps(prec + 10):
        xv = mp.mpf(x) if not isinstance(x, mp.mpf) else x
        if not (0 < xv < 1):
            raise ValueError("series evaluation needs 0 < x < 1")
        eps = mp.mpf(10) ** (-(prec + 5))
        lnx = mp.ln(xv)
        total = mp.mpf(0)
        for j, (const, blocks) in exp.items():
            part = mp.mpf(const.numerator) / const.denominator
            part += _sum_blocks(blocks, xv, eps, max_terms)
            total += lnx**j / mp.factorial(j) * part
        return +total


def _sum_blocks(blocks: LinComb, xv, eps, max_terms: int):
    if not blocks:
        return mp.mpf(0)
    groups: dict[tuple[Triple, ...], list[tuple[Block, mp.mpf]]] = {}
    for blk, q in blocks:
        groups.setdefault(blk.inner, []).append((blk, mp.mpf(q.numerator) / q.denominator))
    total = mp.mpf(0)
    x2 = xv * xv
    for inner, items in groups.items():
        d = len(inner)
        vals = [mp.mpf(0)] * (d + 1)
        vals[d] = mp.mpf(1)
        depth_weight = d + max(blk.a for blk, _ in items)
        cmin = min(blk.c for blk, _ in items)
        acc = mp.mpf(0)
        xpow = mp.mpf(1)  # x^(2i) running
        i = 0
        while True:
            i += 1
            xpow *= x2
            if i > max_terms:
                raise RuntimeError("series did not converge within the term cap")
            # update inner nested sums at argument i
            for lvl in range(d - 1, -1, -1):
                t = inner[lvl]
                sgn = 1 if t.s == 1 or i % 2 == 0 else -1
                vals[lvl] += mp.mpf(sgn) / mp.mpf(t.a * i + t.b) ** t.c * vals[lvl + 1]
            for blk, q in items:
                sgn = 1 if blk.sign == 1 or i % 2 == 0 else -1
                acc += q * sgn * xpow * xv**blk.c / mp.mpf(2 * i + blk.c) ** blk.a * vals[0]
            if i >= 8:
                bound = (1 + mp.ln(i)) ** depth_weight * xpow * x2 * xv**cmin / (1 - x2)
                bound *= max(abs(q) for _, q in items) * len(items)
                if bound < eps:
                    break
        total += acc
    return total
