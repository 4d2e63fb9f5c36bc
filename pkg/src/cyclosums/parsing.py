"""Text syntax for words and sum indices.

Words:   w[k:l,k:l,...]   outermost letter first, e.g. w[0:0,4:0]
Sums:    S[{a,b,c},...]   signed c carries the sign, e.g. S[{2,1,-1},{1,0,2}]
Also accepted for factorization requests: "x^L+1" / "x^L-1".
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .cyclopoly import Letter
from .sums import SumIndex
from .words import Word

_WORD_RE = re.compile(r"^w\[([0-9:,\s]*)\]$")
_SUM_RE = re.compile(r"^S\[(.*)\]$")
_TRIPLE_RE = re.compile(r"\{\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\}")
_POLY_RE = re.compile(r"^x\^?(\d+)\s*([+-])\s*1$")


class ParseError(ValueError):
    pass


def parse_word(text: str) -> Word:
    m = _WORD_RE.match(text.strip())
    if not m:
        raise ParseError(f"not a word: {text!r} (expected w[k:l,...])")
    body = m.group(1).strip()
    if not body:
        return Word(())
    letters = []
    for part in body.split(","):
        bits = part.split(":")
        if len(bits) != 2:
            raise ParseError(f"bad letter {part!r} (expected k:l)")
        try:
            letters.append(Letter(int(bits[0]), int(bits[1])))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    return Word(tuple(letters))


def parse_sum_index(text: str) -> SumIndex:
    m = _SUM_RE.match(text.strip())
    if not m:
        raise ParseError(f"not a sum index: {text!r} (expected S[{{a,b,c}},...])")
    triples = _TRIPLE_RE.findall(m.group(1))
    if not triples:
        raise ParseError("sum index needs at least one {a,b,c} triple")
    try:
        return SumIndex.of(*[(int(a), int(b), int(c)) for a, b, c in triples])
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_xn_pm_1(text: str) -> tuple[int, int]:
    """Parse "x^L+1" / "x^L-1" into (L, sign)."""
    m = _POLY_RE.match(text.replace(" ", ""))
    if not m:
        raise ParseError(f"expected x^L+1 or x^L-1, got {text!r}")
    return int(m.group(1)), 1 if m.group(2) == "+" else -1


def frac_json(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def poly_json(coeffs) -> list[str]:
    return [str(int(c)) for c in coeffs]


def word_str(w: Word) -> str:
    return str(w)


def sum_str(idx: SumIndex) -> str:
    return str(idx)


def mpf_str(value, digits: int) -> str:
    import mpmath as mp

    return mp.nstr(value, digits, strip_zeros=False)
