from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gsptri.scalars import is_prime, padic_valuation, scalar_from_string, scalar_to_string


def test_valuation_examples():
    assert padic_valuation(Fraction(12), 2) == 2
    assert padic_valuation(Fraction(1), 5) == 0
    assert padic_valuation(Fraction(9, 25), 5) == -2


def test_valuation_errors():
    with pytest.raises(ValueError):
        padic_valuation(Fraction(0), 3)
    with pytest.raises(ValueError):
        padic_valuation(Fraction(4), 6)


nonzero_rationals = st.fractions(
    min_value=-10**6, max_value=10**6, max_denominator=10**4
).filter(lambda q: q != 0)


@given(x=nonzero_rationals, y=nonzero_rationals, p=st.sampled_from([2, 3, 5, 7, 11]))
def test_valuation_additive(x, y, p):
    assert padic_valuation(x * y, p) == padic_valuation(x, p) + padic_valuation(y, p)


@given(x=st.fractions(max_denominator=10**6))
def test_string_roundtrip(x):
    assert scalar_from_string(scalar_to_string(x)) == x


def test_string_format():
    assert scalar_to_string(Fraction(3)) == "3"
    assert scalar_to_string(Fraction(-3, 4)) == "-3/4"


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}
    for n in range(-2, 43):
        assert is_prime(n) == (n in primes)
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 + 1)
