"""Slow, independent checks used to distrust the fast paths.

Nothing in here is called by the library's own tests of designs or forms; the
test-suite and ``--verify`` compare against it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .arith import DomainError, is_prime, square_free_part, valuation

__all__ = ["SolutionWitness", "diophantine_bruteforce", "hilbert_bruteforce", "random_congruence"]


@dataclass(frozen=True)
class SolutionWitness:
    x: int
    y: int
    z: int
    modulus: int | None = None


@lru_cache(maxsize=4096)
def _primitive_solution_exists(a: int, b: int, q: int) -> bool:
    # Any primitive triple has a unit coordinate; scaling by its inverse makes
    # that coordinate 1.  So search the three slices x = 1, y = 1, z = 1.
    r = np.arange(q, dtype=np.int64)
    sq = r * r % q
    is_square = np.zeros(q, dtype=bool)
    is_square[sq] = True
    # x = 1: a + b y^2 = z^2
    if is_square[(a + b * sq) % q].any():
        return True
    # y = 1: a x^2 + b = z^2
    if is_square[(a * sq + b) % q].any():
        return True
    # z = 1: b y^2 = 1 - a x^2
    b_times = np.zeros(q, dtype=bool)
    b_times[b * sq % q] = True
    return bool(b_times[(1 - a * sq) % q].any())


def hilbert_bruteforce(a: int, b: int, p: int) -> int:
    """``(a, b)_p`` by exhaustive search for a primitive solution of
    ``a x^2 + b y^2 = z^2`` modulo ``p^K``.

    ``a`` and ``b`` are first reduced to their square-free parts, so both
    valuations are 0 or 1; ``K = 3 + v_p(a) + v_p(b)`` for odd ``p`` and
    ``5 + v_2(a) + v_2(b)`` for ``p = 2``.
    """
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol needs nonzero arguments")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    a, b = square_free_part(a), square_free_part(b)
    depth = (5 if p == 2 else 3) + valuation(a, p) + valuation(b, p)
    q = p**depth
    if q > 10**7:
        raise DomainError(f"modulus {p}^{depth} too large for exhaustive search")
    return 1 if _primitive_solution_exists(a % q, b % q, q) else -1


def diophantine_bruteforce(n: int, c: int, bound: int) -> SolutionWitness | None:
    """Primitive ``z^2 = n x^2 + c y^2`` with ``0 <= x, y <= bound``, scanning ``x`` then ``y``."""
    if bound < 1:
        raise DomainError("bound must be at least 1")
    for x in range(bound + 1):
        for y in range(bound + 1):
            if x == 0 and y == 0:
                continue
            rhs = n * x * x + c * y * y
            if rhs < 0:
                continue
            z = isqrt(rhs)
            if z * z == rhs and gcd(gcd(x, y), z) == 1:
                return SolutionWitness(x, y, z)
    return None


def random_congruence(dim: int, seed: int) -> tuple[tuple[Fraction, ...], ...]:
    """Product of ``3 * dim`` random elementary matrices (invertible by construction)."""
    if dim < 1:
        raise DomainError("dimension must be at least 1")
    rng = random.Random(seed)
    m = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    for _ in range(3 * dim):
        kind = rng.choice(("swap", "add", "scale")) if dim > 1 else "scale"
        if kind == "swap":
            i, j = rng.sample(range(dim), 2)
            for row in m:
                row[i], row[j] = row[j], row[i]
        elif kind == "add":
            i, j = rng.sample(range(dim), 2)
            c = rng.choice((-3, -2, -1, 1, 2, 3))
            for row in m:
                row[j] += c * row[i]
        else:
            i = rng.randrange(dim)
            s = Fraction(rng.choice((-1, 1)) * rng.randint(1, 4), rng.randint(1, 4))
            for row in m:
                row[i] *= s
    return tuple(tuple(r) for r in m)
