"""Legendre and Hilbert symbols over the rationals.

Symbol values are the ints ``+1`` and ``-1``; the Legendre convention
``(0/p) = 0`` is not supported and raises instead.  Rational arguments are
accepted anywhere an integer is and are first moved to an integer in the same
square class.
"""

from __future__ import annotations

from fractions import Fraction
from math import prod
from typing import Union

from .arith import (
    DomainError,
    factorize,
    is_prime,
    odd_prime_divisors,
    rational_to_int,
)

__all__ = [
    "INFINITY",
    "hilbert",
    "hilbert_infinity",
    "hilbert_odd",
    "hilbert_two",
    "legendre",
    "r3",
]

Number = Union[int, Fraction]

INFINITY = "inf"


def _check_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """Legendre symbol ``(a/p)`` for an odd prime ``p`` not dividing ``a``.

    Evaluated by Jacobi-symbol reciprocity, so ``a`` is never factored.
    """
    _check_odd_prime(p)
    a %= p
    if a == 0:
        raise DomainError(f"{p} divides the numerator; Legendre symbol is 0-valued there")
    n, t = p, 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t


def _split(a: int, p: int) -> tuple[int, int]:
    e = 0
    while a % p == 0:
        a //= p
        e += 1
    return e, a


def hilbert_odd(a: Number, b: Number, p: int) -> int:
    """Hilbert symbol ``(a, b)_p`` at an odd prime ``p``.

    With ``a = p^alpha u`` and ``b = p^beta v`` (``u, v`` prime to ``p``) this
    is ``(-1)^(alpha beta (p-1)/2) (u/p)^beta (v/p)^alpha``.
    """
    _check_odd_prime(p)
    a, b = rational_to_int(a), rational_to_int(b)
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    s = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(v, p)
    return s


def hilbert_infinity(a: Number, b: Number) -> int:
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol needs nonzero arguments")
    return -1 if a < 0 and b < 0 else 1


def hilbert_two(a: Number, b: Number) -> int:
    """``(a, b)_2``, recovered from the product formula over all places."""
    a, b = rational_to_int(a), rational_to_int(b)
    s = hilbert_infinity(a, b)
    for p in odd_prime_divisors(a, b):
        s *= hilbert_odd(a, b, p)
    return s


def hilbert(a: Number, b: Number, place: int | str) -> int:
    """Dispatch on the place: an odd prime, ``2``, or ``"inf"``."""
    if place == INFINITY:
        return hilbert_infinity(a, b)
    if place == 2:
        return hilbert_two(a, b)
    return hilbert_odd(a, b, place)


def r3(n: int) -> int:
    """Product of the primes ``3 mod 4`` dividing the square-free part of ``n``."""
    if n == 0:
        raise DomainError("r3 of 0 is undefined")
    return prod(p for p, e in factorize(n).factors if e % 2 and p % 4 == 3)
