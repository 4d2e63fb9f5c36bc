from fractions import Fraction

import pytest

from cyclosums.cyclopoly import (
    IntPolynomial,
    Letter,
    cyclotomic,
    divisors,
    factor_xn_minus_1,
    factor_xn_plus_1,
    moebius,
    partial_fraction_inverse,
    totient,
    xn_minus_1,
    xn_plus_1,
)


def test_first_cyclotomics():
    assert str(cyclotomic(1)) == "x - 1"
    assert cyclotomic(2).coeffs == (1, 1)
    assert cyclotomic(3).coeffs == (1, 1, 1)
    assert cyclotomic(4).coeffs == (1, 0, 1)
    assert cyclotomic(6).coeffs == (1, -1, 1)
    assert cyclotomic(12).coeffs == (1, 0, -1, 0, 1)
    assert str(cyclotomic(12)) == "x^4 - x^2 + 1"


def test_cyclotomic_105_has_coefficient_minus_two():
    # first index where a coefficient outside {-1, 0, 1} appears
    assert -2 in cyclotomic(105).coeffs
    for n in range(1, 105):
        assert set(cyclotomic(n).coeffs) <= {-1, 0, 1}


def test_cyclotomic_rejects_zero():
    with pytest.raises(ValueError):
        cyclotomic(0)


@pytest.mark.parametrize("n,expected", [(1, 1), (12, 4), (20, 8)])
def test_totient_examples(n, expected):
    assert totient(n) == expected


def test_totient_direct_count():
    from math import gcd

    for n in range(1, 120):
        assert totient(n) == sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@pytest.mark.parametrize("n,expected", [(1, 1), (4, 0), (6, 1), (30, -1), (2, -1)])
def test_moebius_examples(n, expected):
    assert moebius(n) == expected


def test_product_of_cyclotomics_is_xn_minus_1():
    for n in range(1, 301):
        prod = IntPolynomial([1])
        for d in divisors(n):
            prod = prod * cyclotomic(d)
        assert prod == xn_minus_1(n), n


def test_degree_and_totient_sum():
    for n in range(1, 301):
        assert cyclotomic(n).degree == totient(n)
        assert sum(totient(d) for d in divisors(n)) == n


def test_phi_2n_is_phi_n_of_minus_x():
    for n in range(3, 101, 2):
        assert cyclotomic(2 * n) == cyclotomic(n).compose_neg()


@pytest.mark.parametrize("l,expected", [(3, [2, 6]), (1, [2]), (20, [8, 40])])
def test_factor_xn_plus_1_examples(l, expected):
    assert factor_xn_plus_1(l) == expected


def test_factor_xn_plus_1_product():
    for l in range(1, 61):
        prod = IntPolynomial([1])
        for k in factor_xn_plus_1(l):
            prod = prod * cyclotomic(k)
        assert prod == xn_plus_1(l), l


@pytest.mark.parametrize("l,expected", [(1, [1]), (6, [1, 2, 3, 6]), (12, [1, 2, 3, 4, 6, 12])])
def test_factor_xn_minus_1(l, expected):
    assert factor_xn_minus_1(l) == expected
    prod = IntPolynomial([1])
    for k in expected:
        prod = prod * cyclotomic(k)
    assert prod == xn_minus_1(l)


def test_partial_fraction_examples():
    # 1/(x^2+1) = f_4^0
    assert partial_fraction_inverse(+1, 2) == {Letter(4, 0): Fraction(1)}
    # 1/(x-1) = f_1^0
    assert partial_fraction_inverse(-1, 1) == {Letter(1, 0): Fraction(1)}
    # 1/(x^6+1) = (1/3)[f_4^0 + 2 f_12^0 - f_12^2]
    assert partial_fraction_inverse(+1, 6) == {
        Letter(4, 0): Fraction(1, 3),
        Letter(12, 0): Fraction(2, 3),
        Letter(12, 2): Fraction(-1, 3),
    }


def test_partial_fraction_printed_low_cases():
    assert partial_fraction_inverse(+1, 1) == {Letter(2, 0): Fraction(1)}
    assert partial_fraction_inverse(-1, 2) == {
        Letter(1, 0): Fraction(1, 2),
        Letter(2, 0): Fraction(-1, 2),
    }
    assert partial_fraction_inverse(+1, 3) == {
        Letter(2, 0): Fraction(1, 3),
        Letter(6, 1): Fraction(-1, 3),
        Letter(6, 0): Fraction(2, 3),
    }
    assert partial_fraction_inverse(-1, 6) == {
        Letter(1, 0): Fraction(1, 6),
        Letter(2, 0): Fraction(-1, 6),
        Letter(3, 0): Fraction(-2, 6),
        Letter(3, 1): Fraction(-1, 6),
        Letter(6, 0): Fraction(-2, 6),
        Letter(6, 1): Fraction(1, 6),
    }


def test_partial_fraction_numeric_reconstruction():
    # numeric spot check at a rational point, exact arithmetic
    for sign, l in [(1, 4), (1, 5), (-1, 5), (-1, 12), (1, 12), (1, 20)]:
        expansion = partial_fraction_inverse(sign, l)
        x = Fraction(3, 7)
        target = 1 / (x**l + sign)
        got = sum(c * Fraction(x**let.l) / let.denominator()(x) for let, c in expansion.items())
        assert got == target, (sign, l)


def test_letter_invariants():
    with pytest.raises(ValueError):
        Letter(0, 1)
    with pytest.raises(ValueError):
        Letter(1, 1)  # phi(1) = 1 so only l = 0
    with pytest.raises(ValueError):
        Letter(12, 4)  # phi(12) = 4 so l < 4
    assert Letter(12, 3).k == 12
    assert Letter(0, 0) < Letter(1, 0) < Letter(2, 0) < Letter(12, 0)
