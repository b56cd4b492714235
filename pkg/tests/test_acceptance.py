"""Acceptance criteria, one group per criterion, at the stated tolerances."""

import io
import random
import time
from math import prod

import pytest

from qfdesign.arith import factorize, is_perfect_square, square_free_part
from qfdesign.cli import format_report, parse_records, run, split_record
from qfdesign.designs import (
    DecompositionRejected,
    brc_test,
    decomposition_derive,
    decomposition_test,
    maxdet_test,
    plane_test,
)
from qfdesign.forms import (
    DiagonalForm,
    Signature,
    SymMatrix,
    det,
    diagonalize,
    form_invariants,
    gram_exclusion,
    hasse_minkowski,
    pall_invariant,
    relevant_primes,
)
from qfdesign.oracle import SolutionWitness, diophantine_bruteforce, hilbert_bruteforce, random_congruence
from qfdesign.scan import scan_even_decompositions, scan_maxdet, scan_planes
from qfdesign.symbols import hilbert_odd, legendre
from qfdesign.verdict import Reason

ODD_PRIMES = (3, 5, 7, 11, 13)


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    result = fn(*args, **kwargs)
    return result, time.perf_counter() - start


# -- 1 ------------------------------------------------------------------------

c1 = pytest.mark.criterion(1, "symbol exactness")


@c1
@pytest.mark.parametrize("a, p, expected", [(2, 7, 1), (2, 11, -1), (31, 103, -1), (29, 151, 1)])
def test_c1_legendre(a, p, expected):
    value, elapsed = timed(legendre, a, p)
    assert value == expected
    assert elapsed < 1e-3


@c1
def test_c1_hilbert():
    value, elapsed = timed(hilbert_odd, 21, 33, 3)
    assert value == 1
    assert elapsed < 1e-3


# -- 2 ------------------------------------------------------------------------


@pytest.mark.criterion(2, "form exclusion of <1,2,7,14>")
def test_c2_form_exclusion():
    s = SymMatrix.diagonal([1, 2, 7, 14])
    inv = form_invariants(s)
    assert inv.discriminant == 1
    assert inv.local(7) == -1
    verdict = gram_exclusion(s)
    assert verdict.excluded
    assert verdict.reason is Reason.LOCAL_INVARIANT
    assert verdict.witness == 7


# -- 3 ------------------------------------------------------------------------


@pytest.mark.criterion(3, "diagonalization witness")
def test_c3_diagonalization():
    s = SymMatrix([[1, 2, 3], [2, 4, 5], [3, 5, -1]])
    w = diagonalize(s)
    assert s.congruent(w.transform) == SymMatrix.diagonal(w.values)
    assert w.signature == Signature(2, 1, 0)
    inv = form_invariants(s)
    assert inv == form_invariants(SymMatrix.diagonal([1, -10, 10]))
    assert inv == form_invariants(SymMatrix.diagonal([1, -1, 1]))


# -- 4 ------------------------------------------------------------------------


@pytest.mark.criterion(4, "plane scan")
def test_c4_plane_scan():
    start = time.perf_counter()
    report = scan_planes(30)
    assert set(report.excluded_values("n")) == {6, 14, 21, 22, 30}
    assert not plane_test(10).excluded
    assert not brc_test(111, 11, 1).excluded
    assert diophantine_bruteforce(10, -1, 10) == SolutionWitness(1, 1, 3)
    assert time.perf_counter() - start < 1.0


# -- 5 ------------------------------------------------------------------------

c5 = pytest.mark.criterion(5, "decomposition trio")


@c5
def test_c5_2380():
    start = time.perf_counter()
    verdict = decomposition_test(decomposition_derive(2380, 183, 793))
    elapsed = time.perf_counter() - start
    assert verdict.reason is Reason.NON_SQUARE and verdict.witness == 89280
    assert factorize(89280).factors == ((2, 6), (3, 2), (5, 1), (31, 1))
    assert elapsed < 0.01


@c5
def test_c5_91():
    start = time.perf_counter()
    dp = decomposition_derive(91, 36, 45)
    verdict = decomposition_test(dp)
    elapsed = time.perf_counter() - start
    assert dp.sigma == 471
    assert verdict.reason is Reason.LOCAL_INVARIANT and verdict.witness == 3
    assert elapsed < 0.01


@c5
def test_c5_31():
    start = time.perf_counter()
    verdict = decomposition_test(decomposition_derive(31, 15, 10))
    elapsed = time.perf_counter() - start
    assert not verdict.excluded
    assert elapsed < 0.01


# -- 6 ------------------------------------------------------------------------

c6 = pytest.mark.criterion(6, "even-v decomposition census up to 2500")


def _check_census(report):
    assert len(report.rows) == 1
    row = report.rows[0]
    assert (row.params["v"], row.params["k1"], row.params["k2"]) == (2380, 183, 793)
    assert row.verdict.excluded and row.verdict.reason is Reason.NON_SQUARE


@c6
def test_c6_census_serial():
    report, elapsed = timed(scan_even_decompositions, 2500)
    _check_census(report)
    assert elapsed <= 600


@c6
def test_c6_census_parallel():
    report, elapsed = timed(scan_even_decompositions, 2500, jobs=8)
    _check_census(report)
    assert elapsed <= 120


# -- 7 ------------------------------------------------------------------------


@pytest.mark.criterion(7, "maximal determinant")
def test_c7_maxdet():
    start = time.perf_counter()
    assert scan_maxdet(511).extra["smallest_not_excluded"] == 511
    assert not maxdet_test(5).excluded
    assert maxdet_test(63).excluded
    assert time.perf_counter() - start < 5.0


# -- 8 ------------------------------------------------------------------------

c8 = pytest.mark.criterion(8, "property suites")


def _positive_definite(rng, dim):
    r = [[rng.randint(-4, 4) for _ in range(dim)] for _ in range(dim)]
    return SymMatrix(
        [[sum(r[k][i] * r[k][j] for k in range(dim)) + (i == j) for j in range(dim)] for i in range(dim)]
    )


@c8
def test_c8a_pall_congruence_invariance():
    rng = random.Random(2024)
    violations = 0
    for trial in range(1000):
        s = _positive_definite(rng, rng.randint(1, 6))
        t = s.congruent(random_congruence(s.n, trial))
        p = rng.choice(ODD_PRIMES)
        violations += pall_invariant(s, p) != pall_invariant(t, p)
    assert violations == 0


@c8
def test_c8b_pall_equals_hasse_minkowski():
    rng = random.Random(2025)
    for _ in range(500):
        entries = [rng.choice((1, -1)) * rng.randint(1, 100) for _ in range(rng.randint(1, 6))]
        entries.append(square_free_part(prod(entries)))
        form = DiagonalForm.reduce(entries)
        assert square_free_part(prod(form.entries)) == 1
        s = SymMatrix.diagonal(form.entries)
        for p in relevant_primes(form) | set(ODD_PRIMES):
            assert pall_invariant(s, p) == hasse_minkowski(form, p)


@c8
def test_c8c_minors_lemma():
    rng = random.Random(2026)
    for _ in range(200):
        s = _positive_definite(rng, rng.randint(3, 6))
        n = s.n
        full = det(s.rows)
        for i in range(n):
            for j in range(i + 1, n):
                def minor(rows, cols):
                    return det([[s[r, c] for c in cols] for r in rows])

                drop = lambda *ks: [x for x in range(n) if x not in ks]
                lhs = full * minor(drop(i, j), drop(i, j))
                rhs = minor(drop(i), drop(i)) * minor(drop(j), drop(j)) - minor(drop(i), drop(j)) ** 2
                assert lhs == rhs


@c8
def test_c8d_hilbert_exhaustive():
    values = [x for x in range(-50, 51) if x]
    mismatches = [
        (a, b, p)
        for p in ODD_PRIMES
        for a in values
        for b in values
        if hilbert_odd(a, b, p) != hilbert_bruteforce(a, b, p)
    ]
    assert mismatches == []


@c8
def test_c8e_sigma_identity_over_census():
    derived = 0
    for v in range(4, 2501, 2):
        for k in range(2, v // 2 + 1):
            lam, rem = divmod(k * (k - 1), v - 1)
            if rem or not 0 < lam < k or not is_perfect_square(k - lam):
                continue
            for k1 in range(1, k // 2 + 1):
                try:
                    dp = decomposition_derive(v, k1, k - k1)
                except DecompositionRejected:
                    continue
                derived += 1
                assert dp.sigma + v * dp.tau == (dp.k1 * dp.k2 + 1) ** 2
    assert derived >= 1


# -- 9 ------------------------------------------------------------------------

c9 = pytest.mark.criterion(9, "CLI contract")


def _run(*argv):
    out = io.StringIO()
    return run(list(argv), out=out), out.getvalue()


@c9
def test_c9_run_examples():
    status, out = _run("symbol", "legendre", "31", "103")
    assert status == 0 and out.strip() == "-1"
    status, out = _run("design", "brc", "43", "7", "1")
    assert status == 1 and "excluded" in out and "p=3" in out
    status, out = _run("design", "decompose", "91", "36", "45")
    assert status == 1 and "sigma=471" in out and "p=3" in out


@c9
def test_c9_records_round_trip():
    for kind, bound in (("planes", 30), ("maxdet", 600), ("decompositions", 2500)):
        status, out = _run("scan", kind, "--max", str(bound), "--format", "records")
        assert status == 0
        report = {"planes": scan_planes, "maxdet": scan_maxdet, "decompositions": scan_even_decompositions}[kind](bound)
        expected = [
            (r.params, r.verdict.outcome, r.verdict.reason.value if r.verdict.excluded else None) for r in report.rows
        ]
        assert [split_record(r) for r in parse_records(out)] == expected
        assert parse_records(format_report(report, "records")) == parse_records(out)
    status, out = _run("scan", "planes", "--max", "30", "--format", "records")
    records = parse_records(out)
    assert len(records) == 29
    assert sum(r["outcome"] == "excluded" for r in records) == 5
