"""Parameter-space sweeps built on the design tests.

Each sweep is split into independent cells keyed by its outermost parameter;
cells can be farmed out to worker processes and are merged back in
ascending order, so the result never depends on scheduling.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .arith import DomainError, is_perfect_square
from .designs import DecompositionRejected, brc_test, decomposition_derive, decomposition_test, maxdet_test, plane_test
from .verdict import Verdict

DEFAULT_MAX_ROWS = 10_000


@dataclass(frozen=True)
class Row:
    params: dict[str, int]
    verdict: Verdict


@dataclass
class ScanReport:
    query: dict[str, object]
    rows: list[Row]
    summary: dict[str, int]
    elapsed: float = 0.0
    notes: tuple[str, ...] = ()
    dropped: int = 0
    extra: dict[str, object] = field(default_factory=dict)

    def excluded_values(self, key: str) -> list[int]:
        return [r.params[key] for r in self.rows if r.verdict.excluded]

    def not_excluded_values(self, key: str) -> list[int]:
        return [r.params[key] for r in self.rows if not r.verdict.excluded]


def _summarize(rows: list[Row]) -> dict[str, int]:
    counts = Counter(r.verdict.outcome for r in rows)
    summary = {"rows": len(rows), "excluded": counts["excluded"], "not-excluded": counts["not-excluded"]}
    reasons = Counter(r.verdict.reason.value for r in rows if r.verdict.excluded)
    summary.update({f"reason.{k}": reasons[k] for k in sorted(reasons)})
    return summary


def _run(cell: Callable[[int], list[Row]], keys: Iterable[int], jobs: int) -> list[Row]:
    keys = list(keys)
    if jobs <= 1 or len(keys) < 2:
        chunks = [cell(k) for k in keys]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(cell, keys, chunksize=max(1, len(keys) // (8 * jobs))))
    return [row for chunk in chunks for row in chunk]


def _report(query, rows, started, notes=(), max_rows=DEFAULT_MAX_ROWS) -> ScanReport:
    summary = _summarize(rows)
    kept, dropped, seen = [], 0, 0
    for r in rows:
        if not r.verdict.excluded:
            seen += 1
            if seen > max_rows:
                dropped += 1
                continue
        kept.append(r)
    return ScanReport(query, kept, summary, time.perf_counter() - started, tuple(notes), dropped)


def _plane_cell(n: int) -> list[Row]:
    return [Row({"n": n}, plane_test(n))]


def scan_planes(n_max: int, jobs: int = 1, max_rows: int = DEFAULT_MAX_ROWS) -> ScanReport:
    """Bruck-Ryser verdict for every plane order ``2..n_max``."""
    if n_max < 2:
        raise DomainError("n_max must be at least 2")
    started = time.perf_counter()
    rows = _run(_plane_cell, range(2, n_max + 1), jobs)
    return _report({"scan": "planes", "n_max": n_max}, rows, started, max_rows=max_rows)


def _decomposition_cell(v: int) -> list[Row]:
    rows = []
    for k in range(2, v // 2 + 1):
        lam, rem = divmod(k * (k - 1), v - 1)
        if rem or not 0 < lam < k or not is_perfect_square(k - lam):
            continue
        for k1 in range(1, k // 2 + 1):
            try:
                dp = decomposition_derive(v, k1, k - k1)
            except DecompositionRejected:
                continue
            if any(
                brc_test(d.v, d.k, d.lam, allow_trivial=True).excluded
                for name, d in dp.designs().items()
                if name != "sum"
            ):
                continue
            params = {
                "v": v,
                "k": k,
                "lambda": lam,
                "k1": dp.k1,
                "lambda1": dp.lambda1,
                "k2": dp.k2,
                "lambda2": dp.lambda2,
                "alpha": dp.alpha,
                "sigma": dp.sigma,
                "tau": dp.tau,
            }
            rows.append(Row(params, decomposition_test(dp)))
    return rows


def scan_even_decompositions(v_max: int, jobs: int = 1, max_rows: int = DEFAULT_MAX_ROWS) -> ScanReport:
    """Candidate decompositions of symmetric designs on an even number of points.

    Only ``k <= v/2`` (complements give the same conditions) and
    ``k1 <= k2`` are enumerated.  A candidate is an admissible ``(v, k, lambda)``
    with ``k - lambda`` square and a split into two designs whose integrality
    and BRC conditions hold; every candidate gets :func:`decomposition_test`.
    """
    if v_max < 4:
        raise DomainError("v_max must be at least 4")
    started = time.perf_counter()
    rows = _run(_decomposition_cell, range(4, v_max + 1, 2), jobs)
    notes = ("v-even", "k<=v/2", "k1<=k2")
    return _report({"scan": "decompositions", "v_max": v_max}, rows, started, notes, max_rows)


def _maxdet_cell(n: int) -> list[Row]:
    return [Row({"n": n, "m": n // 7}, maxdet_test(n).verdict)]


def scan_maxdet(n_max: int, jobs: int = 1, max_rows: int = DEFAULT_MAX_ROWS) -> ScanReport:
    """Attainability of the ``n = 3 mod 4`` maximal-determinant bound for ``n = 7m``, ``63 <= n <= n_max``."""
    if n_max < 63:
        raise DomainError("n_max must be at least 63")
    started = time.perf_counter()
    # 7m = 3 (mod 4)  <=>  n = 7 (mod 28)
    rows = _run(_maxdet_cell, range(63, n_max + 1, 28), jobs)
    report = _report({"scan": "maxdet", "n_max": n_max}, rows, started, ("n=7m", "n=3mod4"), max_rows)
    open_orders = [r.params["n"] for r in rows if not r.verdict.excluded]
    report.extra["smallest_not_excluded"] = open_orders[0] if open_orders else None
    return report
