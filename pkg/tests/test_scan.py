import pytest

from qfdesign.arith import DomainError
from qfdesign.scan import scan_even_decompositions, scan_maxdet, scan_planes
from qfdesign.verdict import Reason


def test_scan_planes_examples():
    report = scan_planes(30)
    assert report.excluded_values("n") == [6, 14, 21, 22, 30]
    assert report.summary["rows"] == 29
    assert report.summary["excluded"] == 5
    assert report.summary["reason.not-two-squares"] == 5


def test_scan_planes_monotone():
    small = scan_planes(50).excluded_values("n")
    large = scan_planes(100).excluded_values("n")
    assert large[: len(small)] == small
    assert all(n > 50 for n in large[len(small) :])


def test_scan_deterministic_and_parallel():
    serial = scan_planes(200)
    parallel = scan_planes(200, jobs=4)
    assert [(r.params, r.verdict) for r in serial.rows] == [(r.params, r.verdict) for r in parallel.rows]
    assert serial.summary == parallel.summary


def test_scan_max_rows():
    report = scan_planes(30, max_rows=3)
    assert len(report.rows) == 8
    assert report.dropped == 21
    assert report.summary["rows"] == 29


def test_scan_decompositions_small():
    report = scan_even_decompositions(400)
    assert report.rows == []
    assert report.notes == ("v-even", "k<=v/2", "k1<=k2")


def test_scan_maxdet():
    report = scan_maxdet(511)
    assert report.extra["smallest_not_excluded"] == 511
    assert all(r.params["n"] % 28 == 7 for r in report.rows)
    assert scan_maxdet(500).extra["smallest_not_excluded"] is None
    assert scan_maxdet(300).rows[0].verdict.reason is Reason.NON_SQUARE


def test_scan_domain_errors():
    with pytest.raises(DomainError):
        scan_planes(1)
    with pytest.raises(DomainError):
        scan_even_decompositions(2)
    with pytest.raises(DomainError):
        scan_maxdet(10)
