"""Shuffle algebra of polylogarithm words over the cyclotomic alphabet.

A word is an ordered tuple of letters, outermost integration first, so
``Word((Letter(0,0), Letter(4,0)))`` is the iterated integral whose outer
kernel is 1/x and whose inner kernel is 1/(1+x^2).  The empty word is the
algebra unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Generic, Iterable, Iterator, Mapping, TypeVar

from .cyclopoly import Letter, moebius, divisors

T = TypeVar("T")


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> "Word":
        return cls(tuple(Letter(k, l) for k, l in pairs))

    @property
    def weight(self) -> int:
        return len(self.letters)

    def is_empty(self) -> bool:
        return not self.letters

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __str__(self):
        return "w[" + ",".join(f"{a.k}:{a.l}" for a in self.letters) + "]"

    def __repr__(self):
        return str(self)


ZERO_LETTER = Letter(0, 0)


def zero_word(m: int) -> Word:
    return Word((ZERO_LETTER,) * m)


class LinComb(Generic[T]):
    """Formal finite linear combination with exact Fraction coefficients.

    Zero coefficients are never stored; terms are hashable value objects.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[T, Fraction] | Iterable[tuple[T, Fraction]] = ()):
        d: dict[T, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, v in items:
            v = Fraction(v)
            if v:
                d[k] = d.get(k, Fraction(0)) + v
                if not d[k]:
                    del d[k]
        self.terms = d

    @classmethod
    def single(cls, term: T, coeff=Fraction(1)) -> "LinComb[T]":
        return cls([(term, Fraction(coeff))])

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __getitem__(self, term: T) -> Fraction:
        return self.terms.get(term, Fraction(0))

    def __add__(self, other: "LinComb[T]") -> "LinComb[T]":
        d = dict(self.terms)
        for k, v in other.terms.items():
            d[k] = d.get(k, Fraction(0)) + v
            if not d[k]:
                del d[k]
        return LinComb(d)

    def __sub__(self, other: "LinComb[T]") -> "LinComb[T]":
        return self + other.scale(-1)

    def scale(self, c) -> "LinComb[T]":
        c = Fraction(c)
        if not c:
            return LinComb()
        return LinComb({k: v * c for k, v in self.terms.items()})

    def map_terms(self, fn) -> "LinComb":
        out = LinComb()
        for k, v in self.terms.items():
            out = out + fn(k).scale(v)
        return out

    def __eq__(self, other):
        return isinstance(other, LinComb) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({v})*{k}" for k, v in sorted(self.terms.items(), key=lambda kv: str(kv[0])))


def shuffle(w1: Word, w2: Word) -> LinComb[Word]:
    """All order-preserving interleavings of two words, with multiplicity."""
    out: dict[Word, Fraction] = {}
    for w, mult in _shuffle_tuples(w1.letters, w2.letters).items():
        out[Word(w)] = Fraction(mult)
    return LinComb(out)


def _shuffle_tuples(a: tuple, b: tuple) -> dict[tuple, int]:
    if not a:
        return {b: 1}
    if not b:
        return {a: 1}
    out: dict[tuple, int] = {}
    for w, m in _shuffle_tuples(a[1:], b).items():
        key = (a[0],) + w
        out[key] = out.get(key, 0) + m
    for w, m in _shuffle_tuples(a, b[1:]).items():
        key = (b[0],) + w
        out[key] = out.get(key, 0) + m
    return out


def shuffle_lincomb(c1: LinComb[Word], c2: LinComb[Word]) -> LinComb[Word]:
    """Bilinear extension of the shuffle product."""
    out = LinComb()
    for w1, a in c1:
        for w2, b in c2:
            out = out + shuffle(w1, w2).scale(a * b)
    return out


def log_power_shuffle(w: Word, m: int) -> LinComb[Word]:
    """Shuffle of w with the m-fold zero word; represents ln^m(x)*C_w / m!."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return LinComb.single(w)
    return shuffle(zero_word(m), w)


def witt_count(M: int, w: int) -> int:
    """First Witt formula: number of Lyndon words of length w over M letters."""
    if M < 1 or w < 1:
        raise ValueError("need M >= 1 and w >= 1")
    total = sum(moebius(w // d) * M**d for d in divisors(w))
    assert total % w == 0
    return total // w


def lyndon_words(alphabet_size: int, w: int) -> list[tuple[int, ...]]:
    """All Lyndon words of length w over {0, ..., alphabet_size-1}, by
    Duval's algorithm, in lexicographic order."""
    if alphabet_size < 1 or w < 1:
        raise ValueError("need alphabet_size >= 1 and w >= 1")
    out = []
    word = [-1]
    while word:
        word[-1] += 1
        if len(word) == w:
            out.append(tuple(word))
        m = len(word)
        while len(word) < w:
            word.append(word[-m])
        while word and word[-1] == alphabet_size - 1:
            word.pop()
    return out


def lyndon_basis(alphabet: list[Letter], w: int) -> list[Word]:
    """Lyndon words of weight w over an ordered alphabet of distinct letters."""
    if not alphabet:
        raise ValueError("alphabet must be nonempty")
    if len(set(alphabet)) != len(alphabet):
        raise ValueError("alphabet letters must be distinct")
    order = sorted(alphabet)
    return [Word(tuple(order[i] for i in idx)) for idx in lyndon_words(len(order), w)]


def table1() -> dict[tuple[int, int], int]:
    """Witt counts for weights 1..8 and alphabets of 2..8 letters."""
    return {(m, w): witt_count(m, w) for w in range(1, 9) for m in range(2, 9)}
