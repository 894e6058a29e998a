from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from akproj.fp import (DenominatorDivisibleByP, EvenPrime, FpElement, NotPrime, Prime, ZeroInverse,
                       fp_inv, inv_mod, rational_to_fp, reduce_rational)

SMALL_PRIMES = [p for p in range(3, 102) if all(p % d for d in range(2, int(p ** 0.5) + 1))]


def test_inverse_examples():
    assert fp_inv(FpElement.of(2, 5)).residue == 3
    assert fp_inv(FpElement.of(12, 13)).residue == 12
    with pytest.raises(ZeroInverse):
        fp_inv(FpElement.of(5, 5))


def test_rational_examples():
    assert rational_to_fp(-18, 5, 7).residue == 2
    assert rational_to_fp(1, 12, 13).residue == 12
    with pytest.raises(DenominatorDivisibleByP):
        rational_to_fp(1, 12, 3)


def test_reduced_fraction_is_evaluable():
    # 3/6 = 1/2 has no factor 3 in its reduced denominator
    assert rational_to_fp(3, 6, 3).residue == 2


def test_prime_validation():
    assert Prime(13).odd
    assert not Prime(2).odd
    with pytest.raises(NotPrime):
        Prime(25)
    with pytest.raises(EvenPrime):
        Prime(2).require_odd()


def test_residue_is_canonical():
    assert FpElement.of(-1, 7).residue == 6
    assert reduce_rational(Fraction(-1, 480), 13) == 1


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_inverse_exhaustive(p):
    for a in range(1, p):
        x = FpElement.of(a, p)
        assert fp_inv(fp_inv(x)) == x
        assert (x * fp_inv(x)).residue == 1
        assert inv_mod(a, p) * a % p == 1


@given(st.sampled_from(SMALL_PRIMES), st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_rational_negation(p, n, d):
    if Fraction(n, d).denominator % p == 0:
        return
    assert (rational_to_fp(n, d, p) + rational_to_fp(-n, d, p)).residue == 0


@given(st.sampled_from(SMALL_PRIMES), st.integers(), st.integers())
def test_field_ops_match_integers(p, a, b):
    x, y = FpElement.of(a, p), FpElement.of(b, p)
    assert (x + y).residue == (a + b) % p
    assert (x * y).residue == (a * b) % p
    assert (x - y).residue == (a - b) % p
