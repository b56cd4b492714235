"""Exact integer arithmetic: factorization, square-free parts, valuations.

Integers are plain Python ``int`` (arbitrary precision) and rationals are
``fractions.Fraction``, which is always kept in lowest terms with a positive
denominator.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, prod

__all__ = [
    "DomainError",
    "Factorization",
    "factorize",
    "is_perfect_square",
    "is_prime",
    "odd_prime_divisors",
    "rational_to_int",
    "square_free_part",
    "two_squares_test",
    "valuation",
]

TRIAL_LIMIT = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Deterministic for n below this bound with the bases above.
_MR_DETERMINISTIC = 3317044064679887385961981


class DomainError(ValueError):
    """Raised when an argument lies outside an operation's domain."""


@dataclass(frozen=True)
class Factorization:
    factors: tuple[tuple[int, int], ...]
    unit: int = 1

    def value(self) -> int:
        return self.unit * prod(p**e for p, e in self.factors)

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __str__(self) -> str:
        body = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)
        body = body or "1"
        return f"-{body}" if self.unit < 0 else body


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (TRIAL_LIMIT + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(TRIAL_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, TRIAL_LIMIT + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _miller_rabin(n: int, bases) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        a %= n
        if a in (0, 1, n - 1):
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=65536)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < 43 * 43:
        return True
    if not _miller_rabin(n, _MR_BASES):
        return False
    if n < _MR_DETERMINISTIC:
        return True
    rng = random.Random(n)
    return _miller_rabin(n, [rng.randrange(2, n - 1) for _ in range(24)])


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = isqrt(n)
    if r * r == n:
        _split_large(r, out)
        _split_large(r, out)
        return
    d = _pollard_brent(n)
    _split_large(d, out)
    _split_large(n // d, out)


def factorize(n: int) -> Factorization:
    """Complete factorization of a nonzero integer.

    Trial division by primes below 10**6, then Pollard-Brent rho on whatever
    cofactor remains, with every reported prime passing :func:`is_prime`.

    >>> str(factorize(89280))
    '2^6 * 3^2 * 5 * 31'
    """
    if n == 0:
        raise DomainError("cannot factorize 0")
    unit = -1 if n < 0 else 1
    m = abs(n)
    found: dict[int, int] = {}
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    else:
        if m > 1:
            _split_large(m, found)
            m = 1
    if m > 1:
        # loop stopped at p*p > m: the cofactor is prime
        found[m] = found.get(m, 0) + 1
    return Factorization(tuple(sorted(found.items())), unit)


def valuation(n: int, p: int) -> int:
    """Largest ``e`` with ``p**e`` dividing ``n``."""
    if n == 0:
        raise DomainError("valuation of 0 is undefined")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def square_free_part(n: int) -> int:
    """The square-free ``m`` with ``n = m * s**2``; carries the sign of ``n``."""
    if n == 0:
        raise DomainError("square-free part of 0 is undefined")
    f = factorize(n)
    return f.unit * prod(p for p, e in f.factors if e % 2)


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def two_squares_test(n: int) -> bool:
    """True iff ``n = a**2 + b**2`` for integers ``a, b``.

    Uses the prime criterion: no prime ``3 mod 4`` divides the square-free
    part of ``n``.
    """
    if n < 1:
        raise DomainError(f"two-squares test needs a positive integer, got {n}")
    return all(p % 4 != 3 or e % 2 == 0 for p, e in factorize(n).factors)


def odd_prime_divisors(*values: int) -> list[int]:
    """Sorted odd primes dividing at least one of the nonzero ``values``."""
    primes: set[int] = set()
    for v in values:
        if v == 0:
            raise DomainError("prime divisors of 0 are undefined")
        primes.update(p for p, _ in factorize(v).factors if p != 2)
    return sorted(primes)


def rational_to_int(x: int | Fraction) -> int:
    """Integer in the same square class as the nonzero rational ``x``.

    ``p/q`` becomes ``p*q``, which differs from it by the square ``q**2``.
    """
    x = Fraction(x)
    if x == 0:
        raise DomainError("zero has no square class")
    return x.numerator * x.denominator
