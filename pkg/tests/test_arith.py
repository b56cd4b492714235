import random
from math import isqrt, prod

import pytest

from qfdesign.arith import (
    DomainError,
    factorize,
    is_perfect_square,
    is_prime,
    odd_prime_divisors,
    rational_to_int,
    square_free_part,
    two_squares_test,
    valuation,
)
from fractions import Fraction


def test_factorize_examples():
    assert str(factorize(89280)) == "2^6 * 3^2 * 5 * 31"
    assert factorize(89280).factors == ((2, 6), (3, 2), (5, 1), (31, 1))
    assert factorize(1).factors == ()
    assert factorize(-12).unit == -1
    assert factorize(-12).value() == -12
    assert str(factorize(-12)) == "-2^2 * 3"


def test_factorize_large_semiprime():
    p, q = 1_000_003, 998_244_353
    assert factorize(p * q).factors == ((p, 1), (q, 1))
    big = (2**61 - 1) * (2**31 - 1) ** 2
    assert factorize(big).factors == ((2**31 - 1, 2), (2**61 - 1, 1))


def test_factorize_random_roundtrip():
    rng = random.Random(1)
    for _ in range(10_000):
        n = rng.randint(1, 10**12) * rng.choice((1, -1))
        f = factorize(n)
        assert f.value() == n
        assert all(is_prime(p) for p in f.primes())
        assert list(f.primes()) == sorted(set(f.primes()))


def test_factorize_zero():
    with pytest.raises(DomainError):
        factorize(0)


def test_is_prime_against_sieve():
    limit = 20_000
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = [False] * len(sieve[i * i :: i])
    assert [n for n in range(limit) if is_prime(n)] == [n for n in range(limit) if sieve[n]]
    # strong pseudoprime to many small bases
    assert not is_prime(3215031751)
    assert is_prime(2**127 - 1)


def test_valuation():
    assert valuation(89280, 2) == 6
    assert valuation(-45, 3) == 2
    assert valuation(7, 5) == 0
    with pytest.raises(DomainError):
        valuation(0, 3)
    with pytest.raises(DomainError):
        valuation(12, 4)


def test_square_free_part():
    assert square_free_part(89280) == 155
    assert square_free_part(-18) == -2
    assert square_free_part(1) == 1
    with pytest.raises(DomainError):
        square_free_part(0)


def test_square_free_part_random():
    rng = random.Random(2)
    for _ in range(10_000):
        n = rng.randint(1, 10**9)
        m = square_free_part(n)
        s = n // m
        assert n % m == 0 and is_perfect_square(s)
        assert all(e == 1 for _, e in factorize(m).factors)


def test_is_perfect_square_against_isqrt():
    squares = {i * i for i in range(1001)}
    assert all(is_perfect_square(n) == (n in squares) for n in range(10**6 + 1))
    assert not is_perfect_square(-4)


def test_two_squares_against_bruteforce():
    limit = 10**5
    sums = bytearray(limit + 1)
    for a in range(isqrt(limit) + 1):
        for b in range(a, isqrt(limit - a * a) + 1):
            sums[a * a + b * b] = 1
    assert all(two_squares_test(n) == bool(sums[n]) for n in range(1, limit + 1))
    with pytest.raises(DomainError):
        two_squares_test(0)


def test_odd_prime_divisors_and_rational_to_int():
    assert odd_prime_divisors(89280, -21) == [3, 5, 7, 31]
    assert odd_prime_divisors(8) == []
    assert rational_to_int(Fraction(3, 4)) == 12
    assert rational_to_int(-5) == -5
    with pytest.raises(DomainError):
        rational_to_int(0)
    assert prod(odd_prime_divisors(105)) == 105
