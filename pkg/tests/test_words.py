import random
from fractions import Fraction
from math import comb

import pytest

from cyclosums.cyclopoly import Letter
from cyclosums.words import (
    LinComb,
    Word,
    log_power_shuffle,
    lyndon_basis,
    shuffle,
    shuffle_lincomb,
    table1,
    witt_count,
    zero_word,
)

TABLE1 = {
    # weight: counts for 2..8 letters
    1: [2, 3, 4, 5, 6, 7, 8],
    2: [1, 3, 6, 10, 15, 21, 28],
    3: [2, 8, 20, 40, 70, 112, 168],
    4: [3, 18, 60, 150, 315, 588, 1008],
    5: [6, 48, 204, 624, 1554, 3360, 6552],
    6: [9, 116, 670, 2580, 7735, 19544, 43596],
    7: [18, 312, 2340, 11160, 39990, 117648, 299592],
    # (7 letters, w = 8) is (7**8 - 7**4)/8 = 720300; one printed source has a digit typo here
    8: [30, 810, 8160, 48750, 209790, 720300, 2096640],
}


def test_witt_against_full_table1():
    for w, row in TABLE1.items():
        for m, expected in zip(range(2, 9), row):
            assert witt_count(m, w) == expected, (m, w)


def test_witt_trivial():
    assert witt_count(1, 1) == 1
    assert witt_count(2, 3) == 2
    assert witt_count(8, 8) == 2096640


def test_table1_helper():
    t = table1()
    assert len(t) == 56
    assert t[(8, 8)] == 2096640


def test_shuffle_weight_one():
    a, b = Letter(1, 0), Letter(2, 0)
    got = shuffle(Word((a,)), Word((b,)))
    assert got == LinComb({Word((a, b)): Fraction(1), Word((b, a)): Fraction(1)})


def test_shuffle_square_of_zero_letter():
    z = zero_word(1)
    got = shuffle(z, z)
    assert got == LinComb({zero_word(2): Fraction(2)})


def test_shuffle_total_mass_and_positivity():
    rng = random.Random(7)
    letters = [Letter(0, 0), Letter(1, 0), Letter(2, 0), Letter(4, 0), Letter(4, 1)]
    for _ in range(30):
        n1, n2 = rng.randint(0, 3), rng.randint(0, 3)
        w1 = Word(tuple(rng.choice(letters) for _ in range(n1)))
        w2 = Word(tuple(rng.choice(letters) for _ in range(n2)))
        got = shuffle(w1, w2)
        assert all(c > 0 and c.denominator == 1 for _, c in got)
        assert sum(c for _, c in got) == comb(n1 + n2, n1)
        assert all(w.weight == n1 + n2 for w, _ in got)


def test_shuffle_commutative_associative():
    rng = random.Random(11)
    letters = [Letter(0, 0), Letter(1, 0), Letter(2, 0), Letter(4, 0), Letter(6, 0)]
    for _ in range(15):
        ws = [Word(tuple(rng.choice(letters) for _ in range(rng.randint(0, 3)))) for _ in range(3)]
        a, b, c = ws
        assert shuffle(a, b) == shuffle(b, a)
        left = shuffle_lincomb(shuffle(a, b), LinComb.single(c))
        right = shuffle_lincomb(LinComb.single(a), shuffle(b, c))
        assert left == right


def test_lyndon_two_letters():
    a, b = Letter(1, 0), Letter(2, 0)
    assert lyndon_basis([a, b], 2) == [Word((a, b))]
    w3 = lyndon_basis([a, b], 3)
    assert w3 == [Word((a, a, b)), Word((a, b, b))]


def test_lyndon_exhaustive_rotation_oracle():
    # a word is Lyndon iff it is strictly smaller than all proper rotations
    import itertools

    for m, w in [(2, 4), (3, 3), (2, 5)]:
        expect = []
        for tup in itertools.product(range(m), repeat=w):
            rots = [tup[i:] + tup[:i] for i in range(1, w)]
            if all(tup < r for r in rots):
                expect.append(tup)
        letters = [Letter(0, 0), Letter(1, 0), Letter(2, 0)][:m]
        got = lyndon_basis(letters, w)
        assert [tuple(letters.index(a) for a in word.letters) for word in got] == sorted(expect)


def test_lyndon_counts_match_witt():
    letters5 = [Letter(0, 0), Letter(1, 0), Letter(2, 0), Letter(4, 0), Letter(4, 1)]
    for w in range(1, 5):
        assert len(lyndon_basis(letters5, w)) == witt_count(5, w)
    assert len(lyndon_basis(letters5, 4)) == 150


def test_necklace_identity():
    # sum_{d | w} d * witt(M, d) over necklaces consistency: M^w words total
    from cyclosums.cyclopoly import divisors

    for m in range(1, 4):
        for w in range(1, 7):
            assert sum(d * witt_count(m, d) for d in divisors(w)) == m**w


def test_log_power_shuffle():
    w = Word((Letter(4, 0),))
    assert log_power_shuffle(w, 0) == LinComb.single(w)
    got = log_power_shuffle(w, 1)
    assert got == LinComb(
        {
            Word((Letter(0, 0), Letter(4, 0))): Fraction(1),
            Word((Letter(4, 0), Letter(0, 0))): Fraction(1),
        }
    )


def test_lyndon_rejects_bad_alphabet():
    with pytest.raises(ValueError):
        lyndon_basis([], 2)
    with pytest.raises(ValueError):
        lyndon_basis([Letter(1, 0), Letter(1, 0)], 2)
