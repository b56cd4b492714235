"""Command-line front end.

    qfdesign symbol legendre A P
    qfdesign symbol hilbert A B P          (P an odd prime, 2 or inf)
    qfdesign form {diagonalize|invariants|gram-test} [FILE|-]
    qfdesign design brc V K L
    qfdesign design plane N
    qfdesign design decompose V K1 K2
    qfdesign design gdd M N K L1 L2
    qfdesign design maxdet N
    qfdesign scan {planes|decompositions|maxdet} --max X [--jobs J]

Exit status: 0 answer computed / not excluded, 1 excluded, 2 usage or
domain error.  ``--format records`` prints ``key=value`` records, one per
line; ``--format table`` (default) prints for humans.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from typing import Iterable, Sequence

from . import designs, forms, oracle, scan, symbols
from .arith import DomainError, rational_to_int
from .verdict import Reason, Verdict

EXIT_OK, EXIT_EXCLUDED, EXIT_ERROR = 0, 1, 2

_NUMBER = re.compile(r"^[+-]?\d+(/\d+)?$")


class MatrixParseError(DomainError):
    pass


class VerificationError(DomainError):
    pass


def parse_matrix(text: str) -> forms.SymMatrix:
    """Whitespace-separated rows of integers or ``p/q`` fractions.

    Blank lines and lines starting with ``#`` are ignored.
    """
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        row = []
        for col, token in enumerate(line.split(), start=1):
            if not _NUMBER.match(token):
                raise MatrixParseError(f"row {len(rows) + 1}, column {col}: not an integer or fraction: {token!r}")
            try:
                row.append(Fraction(token))
            except ZeroDivisionError:
                raise MatrixParseError(f"row {len(rows) + 1}, column {col}: zero denominator") from None
        rows.append(row)
    if not rows:
        raise MatrixParseError("no matrix rows found")
    n = len(rows)
    for i, row in enumerate(rows, start=1):
        if len(row) != n:
            raise MatrixParseError(f"row {i} has {len(row)} entries, expected {n} (matrix must be square)")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise MatrixParseError(f"asymmetric at ({i + 1},{j + 1})/({j + 1},{i + 1}): {rows[i][j]} != {rows[j][i]}")
    return forms.SymMatrix(rows)


# -- records -----------------------------------------------------------------


def _token(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, Reason):
        return value.value
    return str(value).replace(" ", "")


def format_record(fields: dict) -> str:
    return " ".join(f"{k}={_token(v)}" for k, v in fields.items())


def parse_record(line: str) -> dict[str, str]:
    return dict(part.split("=", 1) for part in line.split())


def parse_records(text: str) -> list[dict[str, str]]:
    """Data records of record-mode output; ``#`` header lines are skipped."""
    return [parse_record(line) for line in text.splitlines() if line.strip() and not line.startswith("#")]


def verdict_fields(verdict: Verdict) -> dict:
    fields = {"outcome": verdict.outcome}
    if verdict.excluded:
        fields["reason"] = verdict.reason
        if verdict.witness is not None:
            fields["witness"] = verdict.witness
        if verdict.rule:
            fields["rule"] = verdict.rule
    elif verdict.note:
        fields["note"] = verdict.note
    return fields


_VERDICT_KEYS = ("outcome", "reason", "witness", "rule", "note")


def split_record(record: dict[str, str]) -> tuple[dict[str, int], str, str | None]:
    """``(parameters, outcome, reason)`` of a parsed row record."""
    params = {k: int(v) for k, v in record.items() if k not in _VERDICT_KEYS}
    return params, record["outcome"], record.get("reason")


def format_report(report: scan.ScanReport, mode: str = "records") -> str:
    """Deterministic rendering; only the ``elapsed`` line varies between runs."""
    header = dict(report.query)
    summary = dict(report.summary, stored=len(report.rows), dropped=report.dropped)
    if mode == "records":
        lines = ["# " + format_record(header)]
        if report.notes:
            lines.append("# normalization=" + ",".join(report.notes))
        lines.append("# " + format_record(summary))
        if report.extra:
            lines.append("# " + format_record(report.extra))
        lines.append(f"# elapsed={report.elapsed:.6f}")
        lines += [format_record({**r.params, **verdict_fields(r.verdict)}) for r in report.rows]
        return "\n".join(lines) + "\n"
    if mode != "table":
        raise DomainError(f"unknown format {mode!r}")
    table = [{**{k: str(v) for k, v in r.params.items()}, **_verdict_columns(r.verdict)} for r in report.rows]
    cols = list(table[0]) if table else ["outcome", "reason", "witness"]
    widths = {c: max([len(c)] + [len(row.get(c, "")) for row in table]) for c in cols}
    lines = ["scan " + " ".join(f"{k}={v}" for k, v in header.items())]
    if report.notes:
        lines.append("normalization: " + ", ".join(report.notes))
    lines.append("  ".join(c.ljust(widths[c]) for c in cols).rstrip())
    lines += ["  ".join(row.get(c, "").ljust(widths[c]) for c in cols).rstrip() for row in table]
    lines.append("summary: " + " ".join(f"{k}={v}" for k, v in summary.items()))
    for k, v in report.extra.items():
        lines.append(f"{k}: {v}")
    lines.append(f"elapsed: {report.elapsed:.3f}s")
    return "\n".join(lines) + "\n"


def _verdict_columns(verdict: Verdict) -> dict[str, str]:
    if not verdict.excluded:
        return {"outcome": verdict.outcome, "reason": "", "witness": ""}
    return {
        "outcome": verdict.outcome,
        "reason": verdict.reason.value,
        "witness": "" if verdict.witness is None else str(verdict.witness),
    }


# -- verification --------------------------------------------------------------


def _legendre_bruteforce(a: int, p: int) -> int:
    if p > 10**7:
        raise DomainError(f"p = {p} too large for exhaustive verification")
    return 1 if any((x * x - a) % p == 0 for x in range(1, p)) else -1


def _verify_verdict(verdict: Verdict) -> None:
    if verdict.reason is Reason.LOCAL_INVARIANT and verdict.symbol is not None:
        a, b = verdict.symbol
        if oracle.hilbert_bruteforce(a, b, verdict.witness) != -1:
            raise VerificationError(f"oracle disagrees: ({a},{b})_{verdict.witness} is not -1")
    for _, part in verdict.parts:
        _verify_verdict(part)


# -- commands ------------------------------------------------------------------


def _emit(out, args, fields: dict, text: str) -> None:
    print(format_record(fields) if args.format == "records" else text, file=out)


def _finish(verdict: Verdict, args) -> int:
    if args.verify:
        _verify_verdict(verdict)
    return EXIT_EXCLUDED if verdict.excluded else EXIT_OK


def _place(token: str) -> int | str:
    if token.lower() in ("inf", "infinity"):
        return symbols.INFINITY
    try:
        return int(token)
    except ValueError:
        raise DomainError(f"place must be a prime or 'inf', got {token!r}") from None


def _cmd_symbol(args, out) -> int:
    if args.kind == "legendre":
        value = symbols.legendre(args.a, args.p)
        if args.verify and _legendre_bruteforce(args.a, args.p) != value:
            raise VerificationError(f"oracle disagrees on ({args.a}/{args.p})")
        fields = {"symbol": "legendre", "a": args.a, "p": args.p}
    else:
        place = _place(args.p)
        value = symbols.hilbert(args.a, args.b, place)
        if args.verify and place != symbols.INFINITY and oracle.hilbert_bruteforce(
            rational_to_int(args.a), rational_to_int(args.b), place
        ) != value:
            raise VerificationError(f"oracle disagrees on ({args.a},{args.b})_{place}")
        fields = {"symbol": "hilbert", "a": args.a, "b": args.b, "p": place}
    literal = f"{value:+d}"
    _emit(out, args, {**fields, "value": literal}, literal)
    return EXIT_OK


def _read_matrix(source: str) -> forms.SymMatrix:
    if source == "-":
        return parse_matrix(sys.stdin.read())
    try:
        with open(source, encoding="utf-8") as fh:
            return parse_matrix(fh.read())
    except OSError as exc:
        raise DomainError(f"cannot read {source}: {exc.strerror}") from exc


def _cmd_form(args, out) -> int:
    s = _read_matrix(args.file)
    if args.action == "diagonalize":
        w = forms.diagonalize(s)
        if args.verify and not w.verify(s):
            raise VerificationError("T^t S T != D")
        if args.format == "records":
            print(format_record({"diagonal": ",".join(map(str, w.values)), "signature": w.signature}), file=out)
            for i, row in enumerate(w.transform, start=1):
                print(format_record({"transform_row": i, "entries": ",".join(map(str, row))}), file=out)
        else:
            print(f"diagonal: <{', '.join(map(str, w.values))}>", file=out)
            print(f"signature: {w.signature}", file=out)
            print("transform T (T^t S T = D):", file=out)
            cells = [[str(x) for x in row] for row in w.transform]
            width = max(len(c) for row in cells for c in row)
            for row in cells:
                print("  " + " ".join(c.rjust(width) for c in row), file=out)
        return EXIT_OK
    if args.action == "invariants":
        inv = forms.form_invariants(s)
        locals_ = ",".join(f"{p}:{v:+d}" for p, v in sorted(inv.locals.items())) or "none"
        fields = {
            "dimension": inv.dimension,
            "signature": inv.signature,
            "discriminant": inv.discriminant,
            "relevant_primes": ",".join(map(str, sorted(inv.relevant_primes))) or "none",
            "locals": locals_,
        }
        text = "\n".join(f"{k}: {v}" for k, v in fields.items())
        _emit(out, args, fields, text)
        return EXIT_OK
    verdict = forms.gram_exclusion(s)
    _emit(out, args, {"test": "gram", **verdict_fields(verdict)}, str(verdict))
    return _finish(verdict, args)


def _cmd_design(args, out) -> int:
    kind = args.kind
    if kind == "brc":
        verdict = designs.brc_test(args.v, args.k, args.lam)
        fields = {"test": "brc", "v": args.v, "k": args.k, "lambda": args.lam}
        text = f"({args.v},{args.k},{args.lam}): {verdict}"
    elif kind == "plane":
        verdict = designs.plane_test(args.n)
        fields = {"test": "plane", "n": args.n}
        text = f"plane of order {args.n}: {verdict}"
    elif kind == "decompose":
        dp = designs.decomposition_derive(args.v, args.k1, args.k2)
        verdict = designs.decomposition_test(dp)
        fields = {
            "test": "decompose",
            "v": dp.v,
            "k": dp.k,
            "lambda": dp.lam,
            "k1": dp.k1,
            "lambda1": dp.lambda1,
            "k2": dp.k2,
            "lambda2": dp.lambda2,
            "alpha": dp.alpha,
            "sigma": dp.sigma,
            "tau": dp.tau,
        }
        lines = [
            f"({dp.v},{dp.k},{dp.lam}) = ({dp.v},{dp.k1},{dp.lambda1}) + ({dp.v},{dp.k2},{dp.lambda2})",
            f"alpha={dp.alpha} sigma={dp.sigma} tau={dp.tau}",
        ]
        lines += [f"  {name}: {part}" for name, part in verdict.parts]
        lines.append(f"verdict: {verdict}")
        text = "\n".join(lines)
    elif kind == "gdd":
        g = designs.GDDParams(args.m, args.n, args.k, args.l1, args.l2)
        verdict = designs.bose_connor_test(g)
        fields = {"test": "gdd", "m": g.m, "n": g.n, "k": g.k, "lambda1": g.lambda1, "lambda2": g.lambda2, "P": g.P, "Q": g.Q}
        text = f"GDD(m={g.m},n={g.n},k={g.k},lambda1={g.lambda1},lambda2={g.lambda2}) P={g.P} Q={g.Q}: {verdict}"
    else:
        md = designs.maxdet_test(args.n)
        verdict = md.verdict
        fields = {"test": "maxdet", "n": md.n, "case": md.case, "applicable": str(md.applicable).lower()}
        text = f"maxdet n={md.n} (n = {md.case} mod 4): {verdict}"
    _emit(out, args, {**fields, **verdict_fields(verdict)}, text)
    return _finish(verdict, args)


_SCANS = {
    "planes": scan.scan_planes,
    "decompositions": scan.scan_even_decompositions,
    "maxdet": scan.scan_maxdet,
}


def _cmd_scan(args, out) -> int:
    report = _SCANS[args.kind](args.max, jobs=args.jobs, max_rows=args.max_rows)
    if args.verify:
        for row in report.rows:
            _verify_verdict(row.verdict)
    out.write(format_report(report, args.format))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "records"), default=argparse.SUPPRESS)
    common.add_argument("--verify", action="store_true", default=argparse.SUPPRESS,
                        help="cross-check symbols against the brute-force oracle")

    parser = argparse.ArgumentParser(prog="qfdesign", description=__doc__.split("\n\n")[0], parents=[common])
    verbs = parser.add_subparsers(dest="verb", required=True)

    sym = verbs.add_parser("symbol", help="Legendre and Hilbert symbols").add_subparsers(dest="kind", required=True)
    p = sym.add_parser("legendre", parents=[common])
    p.add_argument("a", type=int)
    p.add_argument("p", type=int)
    p = sym.add_parser("hilbert", parents=[common])
    p.add_argument("a", type=Fraction)
    p.add_argument("b", type=Fraction)
    p.add_argument("p", help="odd prime, 2, or inf")

    form = verbs.add_parser("form", help="quadratic form analysis of a matrix file", parents=[common])
    form.add_argument("action", choices=("diagonalize", "invariants", "gram-test"))
    form.add_argument("file", nargs="?", default="-", help="matrix file, or - for standard input")

    des = verbs.add_parser("design", help="design feasibility tests").add_subparsers(dest="kind", required=True)
    p = des.add_parser("brc", parents=[common])
    p.add_argument("v", type=int)
    p.add_argument("k", type=int)
    p.add_argument("lam", type=int, metavar="L")
    p = des.add_parser("plane", parents=[common])
    p.add_argument("n", type=int)
    p = des.add_parser("decompose", parents=[common])
    for name in ("v", "k1", "k2"):
        p.add_argument(name, type=int)
    p = des.add_parser("gdd", parents=[common])
    for name in ("m", "n", "k", "l1", "l2"):
        p.add_argument(name, type=int)
    p = des.add_parser("maxdet", parents=[common])
    p.add_argument("n", type=int)

    sc = verbs.add_parser("scan", help="parameter sweeps", parents=[common])
    sc.add_argument("kind", choices=tuple(_SCANS))
    sc.add_argument("--max", type=int, required=True)
    sc.add_argument("--jobs", type=int, default=1)
    sc.add_argument("--max-rows", type=int, default=scan.DEFAULT_MAX_ROWS)
    return parser


_COMMANDS = {"symbol": _cmd_symbol, "form": _cmd_form, "design": _cmd_design, "scan": _cmd_scan}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    args.format = getattr(args, "format", "table")
    args.verify = getattr(args, "verify", False)
    try:
        return _COMMANDS[args.verb](args, out)
    except DomainError as exc:
        print(f"qfdesign: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main(argv: Iterable[str] | None = None) -> int:
    return run(list(argv) if argv is not None else None)


if __name__ == "__main__":
    sys.exit(main())
