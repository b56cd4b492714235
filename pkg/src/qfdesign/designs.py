"""Necessary-condition tests for symmetric designs and relatives.

Every test returns a :class:`~qfdesign.verdict.Verdict`.  ``Excluded`` means a
necessary condition fails and no such object exists; ``NotExcluded`` says
nothing about existence.

Conditions quantified over "all odd primes" are evaluated only at the odd
primes dividing the symbol arguments: at any other odd prime both arguments
are units and the symbol is +1.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import comb

from .arith import DomainError, is_perfect_square, odd_prime_divisors, two_squares_test
from .symbols import hilbert_odd
from .verdict import Reason, Verdict

__all__ = [
    "DecompositionParams",
    "DecompositionRejected",
    "DesignParams",
    "GDDParams",
    "MaxDetVerdict",
    "admissible",
    "bose_connor_test",
    "brc_test",
    "decomposition_derive",
    "decomposition_test",
    "local_condition",
    "maxdet_test",
    "plane_test",
]


@dataclass(frozen=True)
class DesignParams:
    v: int
    k: int
    lam: int

    @property
    def order(self) -> int:
        return self.k - self.lam

    def __str__(self) -> str:
        return f"({self.v},{self.k},{self.lam})"


@dataclass(frozen=True)
class DecompositionParams:
    """A ``(v, k1 + k2, lambda)`` design split into ``(v, k1, lambda1)`` and ``(v, k2, lambda2)``.

    ``sigma`` and ``tau`` are the coefficients of ``Q Q^t = sigma I + tau J``
    for ``Q = M1 M2^t + I``.
    """

    v: int
    k1: int
    lambda1: int
    k2: int
    lambda2: int
    alpha: int
    sigma: int
    tau: int

    @property
    def k(self) -> int:
        return self.k1 + self.k2

    @property
    def lam(self) -> int:
        return self.lambda1 + self.lambda2 + self.alpha

    def designs(self) -> dict[str, DesignParams]:
        return {
            "first": DesignParams(self.v, self.k1, self.lambda1),
            "second": DesignParams(self.v, self.k2, self.lambda2),
            "sum": DesignParams(self.v, self.k, self.lam),
        }


@dataclass(frozen=True)
class GDDParams:
    """Symmetric group divisible design: ``m`` groups of size ``n``, block size ``k``."""

    m: int
    n: int
    k: int
    lambda1: int
    lambda2: int

    @property
    def v(self) -> int:
        return self.m * self.n

    @property
    def P(self) -> int:
        return self.k * self.k - self.v * self.lambda2

    @property
    def Q(self) -> int:
        return self.k - self.lambda1


@dataclass(frozen=True)
class MaxDetVerdict:
    n: int
    case: int  # n mod 4
    verdict: Verdict
    applicable: bool = True

    @property
    def excluded(self) -> bool:
        return self.verdict.excluded


class DecompositionRejected(DomainError):
    """Raised when ``(v, k1, k2)`` cannot be the parameters of a decomposition."""

    def __init__(self, condition: str, message: str):
        super().__init__(message)
        self.condition = condition


def admissible(v: int, k: int, lam: int, allow_trivial: bool = False) -> bool:
    """``0 < lambda < k < v`` and ``k(k-1) = lambda(v-1)``.

    ``allow_trivial`` also admits ``lambda = 0`` (only ``k = 1``, the identity
    matrix), which can occur as a summand of a decomposition.
    """
    low = 0 <= lam if allow_trivial else 0 < lam
    return low and lam < k < v and k * (k - 1) == lam * (v - 1)


def local_condition(a: int, b: int, rule: str) -> Verdict:
    """Require ``(a, b)_p = +1`` at every odd prime ``p``."""
    for p in odd_prime_divisors(a, b):
        if hilbert_odd(a, b, p) == -1:
            return Verdict.exclude(Reason.LOCAL_INVARIANT, p, rule=rule, symbol=(a, b))
    return Verdict.passed()


def _sign(v: int) -> int:
    """``(-1)^((v-1)/2)`` for odd ``v``."""
    return -1 if (v - 1) // 2 % 2 else 1


def brc_test(v: int, k: int, lam: int, allow_trivial: bool = False) -> Verdict:
    """Bruck-Ryser-Chowla conditions for a symmetric ``(v, k, lambda)`` design."""
    if not admissible(v, k, lam, allow_trivial):
        return Verdict.exclude(Reason.INADMISSIBLE, rule="k(k-1)=lambda(v-1),0<lambda<k<v")
    n = k - lam
    if v % 2 == 0:
        if not is_perfect_square(n):
            return Verdict.exclude(Reason.NON_SQUARE, n, rule="k-lambda")
        return Verdict.passed()
    if lam == 0:
        return Verdict.passed(note="trivial design")
    return local_condition(n, _sign(v) * lam, rule="brc")


def plane_test(n: int) -> Verdict:
    """Bruck-Ryser: a plane of order ``n = 1, 2 mod 4`` needs ``n`` to be a sum of two squares."""
    if n < 2:
        raise DomainError(f"plane order must be at least 2, got {n}")
    if n % 4 in (1, 2) and not two_squares_test(n):
        return Verdict.exclude(Reason.NOT_TWO_SQUARES, n, rule="order")
    return Verdict.passed()


def _exact_div(num: int, den: int, name: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise DecompositionRejected(f"{name}-integral", f"{name} = {num}/{den} is not an integer")
    return q


def decomposition_derive(v: int, k1: int, k2: int) -> DecompositionParams:
    """Derived parameters of a decomposition into block sizes ``k1`` and ``k2``.

    Raises :class:`DecompositionRejected` naming the failed condition when the
    lambdas or ``alpha`` are not integers or a design is inadmissible.
    """
    if k1 <= 0 or k2 <= 0 or k1 + k2 >= v:
        raise DecompositionRejected("range", f"need 0 < k1, k2 and k1 + k2 < v, got v={v} k1={k1} k2={k2}")
    lambda1 = _exact_div(k1 * (k1 - 1), v - 1, "lambda1")
    lambda2 = _exact_div(k2 * (k2 - 1), v - 1, "lambda2")
    alpha = _exact_div(2 * k1 * k2, v - 1, "alpha")
    lam = lambda1 + lambda2 + alpha
    for name, (k, l_) in (("first", (k1, lambda1)), ("second", (k2, lambda2))):
        if not admissible(v, k, l_, allow_trivial=True):
            raise DecompositionRejected(f"{name}-admissible", f"({v},{k},{l_}) is not admissible")
    if not admissible(v, k1 + k2, lam):
        raise DecompositionRejected("sum-admissible", f"({v},{k1 + k2},{lam}) is not admissible")
    sigma = (k1 - lambda1) * (k2 - lambda2) - alpha + 1
    tau = v * lambda1 * lambda2 + lambda2 * (k1 - lambda1) + lambda1 * (k2 - lambda2) + alpha
    return DecompositionParams(v, k1, lambda1, k2, lambda2, alpha, sigma, tau)


def _check_decomposition(dp: DecompositionParams) -> None:
    if 2 * dp.k1 * dp.k2 != dp.alpha * (dp.v - 1):
        raise DomainError("alpha != 2 k1 k2 / (v - 1)")
    if not admissible(dp.v, dp.k, dp.lam):
        raise DomainError(f"sum design ({dp.v},{dp.k},{dp.lam}) is not admissible")
    if dp.sigma + dp.v * dp.tau != (dp.k1 * dp.k2 + 1) ** 2:
        raise DomainError("sigma + v tau != (k1 k2 + 1)^2")


def decomposition_test(dp: DecompositionParams) -> Verdict:
    """Gram-matrix condition on ``sigma I + tau J`` for a design decomposition.

    The sigma condition is reported first when it fails; the BRC verdicts of
    the two summands and of the sum are attached as ``parts`` and, if the
    sigma condition holds, the first failing one is propagated.
    """
    _check_decomposition(dp)
    parts = tuple(
        (f"{name}{d}", brc_test(d.v, d.k, d.lam, allow_trivial=name != "sum")) for name, d in dp.designs().items()
    )
    v, sigma = dp.v, dp.sigma
    if sigma < 0:
        main = Verdict.exclude(Reason.POSITIVITY, sigma, rule="sigma")
    elif v % 2 == 0:
        ok = is_perfect_square(sigma)
        main = Verdict.passed() if ok else Verdict.exclude(Reason.NON_SQUARE, sigma, rule="sigma")
    elif sigma == 0:
        main = Verdict.passed(note="sigma = 0, local condition vacuous")
    else:
        main = local_condition(sigma, _sign(v) * v, rule="sigma")
    if main.excluded:
        return replace(main, parts=parts)
    for name, verdict in parts:
        if verdict.excluded:
            return replace(verdict, rule=f"{name}:{verdict.rule}", parts=parts)
    return Verdict.passed(note=main.note, parts=parts)


def bose_connor_test(g: GDDParams) -> Verdict:
    """Bose-Connor conditions for a symmetric group divisible design, checked in order."""
    m, n, k, l1, l2 = g.m, g.n, g.k, g.lambda1, g.lambda2
    if m < 1 or n < 1 or (n - 1) * l1 + n * (m - 1) * l2 != k * (k - 1):
        return Verdict.exclude(Reason.INADMISSIBLE, rule="(n-1)lambda1+n(m-1)lambda2=k(k-1)")
    P, Q = g.P, g.Q
    if P <= 0:
        return Verdict.exclude(Reason.POSITIVITY, P, rule="P")
    if Q <= 0:
        return Verdict.exclude(Reason.POSITIVITY, Q, rule="Q")
    # P^(m-1) Q^(m(n-1)) is a square iff its odd-exponent part is
    odd_part = P ** ((m - 1) % 2) * Q ** ((m * (n - 1)) % 2)
    if not is_perfect_square(odd_part):
        return Verdict.exclude(Reason.NON_SQUARE, odd_part, rule="P^(m-1)Q^(m(n-1))")
    if m % 2 == 0:
        if not is_perfect_square(P):
            return Verdict.exclude(Reason.NON_SQUARE, P, rule="P")
        if m % 4 == 2 and Q % 2 == 0:
            return local_condition(Q, -1, rule="(Q,-1)")
        return Verdict.passed()
    nl2 = (-1) ** comb(m, 2) * n * l2
    if nl2 == 0:
        return Verdict.passed(note="lambda2 = 0, symbol conditions vacuous")
    if n % 2 == 0:
        if not is_perfect_square(Q):
            return Verdict.exclude(Reason.NON_SQUARE, Q, rule="Q")
        return local_condition(nl2, P, rule="((-1)^C(m,2) n lambda2, P)")
    nq = (-1) ** comb(n, 2) * n
    for p in odd_prime_divisors(nl2, P, Q, n):
        if hilbert_odd(nl2, P, p) != hilbert_odd(nq, Q, p):
            return Verdict.exclude(
                Reason.LOCAL_INVARIANT, p, rule="((-1)^C(m,2) n lambda2, P) = ((-1)^C(n,2) n, Q)", symbol=(nl2, P)
            )
    return Verdict.passed()


def maxdet_test(n: int) -> MaxDetVerdict:
    """Can the maximal-determinant bound for ``n x n`` +-1 matrices be attained?

    Only the attainability conditions are checked; the bound itself is not
    computed.  For ``n = 3 mod 4`` the test applies to ``n = 7m >= 63``.
    """
    if n < 2:
        raise DomainError(f"order must be at least 2, got {n}")
    case = n % 4
    if case == 0:
        raise DomainError(f"n = {n} is 0 mod 4 (Hadamard case): no quadratic-form obstruction")
    if case == 1:
        verdict = Verdict.passed() if is_perfect_square(2 * n - 1) else Verdict.exclude(
            Reason.NON_SQUARE, 2 * n - 1, rule="2n-1"
        )
        return MaxDetVerdict(n, case, verdict)
    if case == 2:
        verdict = Verdict.passed() if two_squares_test(2 * n - 2) else Verdict.exclude(
            Reason.NOT_TWO_SQUARES, 2 * n - 2, rule="2n-2"
        )
        return MaxDetVerdict(n, case, verdict)
    if n < 63 or n % 7:
        return MaxDetVerdict(n, case, Verdict.passed(note="condition inapplicable"), applicable=False)
    m = n // 7
    if not is_perfect_square(4 * m - 3):
        return MaxDetVerdict(n, case, Verdict.exclude(Reason.NON_SQUARE, 4 * m - 3, rule="4m-3"))
    return MaxDetVerdict(n, case, local_condition(11 * m - 3, -(7 * m - 3), rule="(11m-3,-(7m-3))"))
