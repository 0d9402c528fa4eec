"""Command-line driver.

Subcommands:
  check      membership report for a matrix file
  tilde      upper-unitriangular flag-mate of a lower-unitriangular matrix
  intersect  torus frame of the flags reached by two unipotent matrices
  pi         eigenvalues and diagonalizing frame of a member
  suite      run the sampled property suite
  conjecture run a part (a) or part (b) scan and emit a report
  report     convert a saved JSON report to json/csv

Matrix files: first line n, then n rows of n whitespace-separated
rationals written as `num/den` or integer tokens.

Exit codes: 0 success, 1 invariant/property failure, 2 input error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from tpgl import explorer
from tpgl.errors import InvariantViolationError, TpglError
from tpgl.flags import borel_from_lower, tilde_map
from tpgl.linalg import SquareMatrix, inverse
from tpgl.pimap import eigen_split
from tpgl.pinning import is_in_G_pos
from tpgl.tori import intersect_borels

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def parse_matrix_text(text: str) -> SquareMatrix:
    tokens = text.split()
    if not tokens:
        raise InputError("empty matrix file")
    try:
        n = int(tokens[0])
    except ValueError as exc:
        raise InputError(f"first token must be the dimension, got {tokens[0]!r}") from exc
    body = tokens[1:]
    if n < 1 or len(body) != n * n:
        raise InputError(f"expected {n}*{n} entries after the dimension, got {len(body)}")
    try:
        entries = [Fraction(tok) for tok in body]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational token: {exc}") from exc
    rows = [entries[i * n:(i + 1) * n] for i in range(n)]
    return SquareMatrix.from_rows(rows)


def read_matrix(path: str) -> SquareMatrix:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_matrix_text(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def format_matrix(m: SquareMatrix) -> str:
    lines = [str(m.n)]
    for row in m.entries:
        lines.append(" ".join(
            str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
            for x in row))
    return "\n".join(lines) + "\n"


def _parse_range(text: str) -> tuple[Fraction, Fraction]:
    try:
        lo, hi = text.split(":")
        return Fraction(lo), Fraction(hi)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"range must look like LO:HI, got {text!r}") from exc


def cmd_check(args) -> int:
    report = is_in_G_pos(read_matrix(args.matrix))
    if report.verdict:
        print("totally positive: yes")
    else:
        w = report.witness
        print("totally positive: no")
        print(f"first violating minor: rows {list(w.index.rows)} cols "
              f"{list(w.index.cols)} value {w.value}")
    return EXIT_OK


def cmd_tilde(args) -> int:
    u = read_matrix(args.matrix)
    sys.stdout.write(format_matrix(tilde_map(u)))
    return EXIT_OK


def cmd_intersect(args) -> int:
    u = read_matrix(args.u_matrix)
    v = read_matrix(args.v_matrix)
    frame = intersect_borels(borel_from_lower(u), borel_from_lower(inverse(v)))
    sys.stdout.write(format_matrix(frame.S))
    return EXIT_OK


def cmd_pi(args) -> int:
    g = read_matrix(args.matrix)
    eigen = eigen_split(g)
    kind = "exact" if eigen.exact else "floating"
    print(f"eigenvalues ({kind}): " + " ".join(str(v) for v in eigen.values))
    sys.stdout.write(format_matrix(eigen.vectors))
    return EXIT_OK


def _config_from_args(args) -> explorer.ScanConfig:
    return explorer.ScanConfig(
        n=args.n,
        seed=args.seed,
        samples=args.samples,
        grid=_parse_range(args.grid),
        p_search=Fraction(args.p_tol),
        param_grid=None if args.param_grid is None else _parse_range(args.param_grid),
    )


def cmd_suite(args) -> int:
    cfg = explorer.ScanConfig(n=args.n, seed=args.seed, samples=args.samples)
    report = explorer.run_property_suite(cfg)
    for check in report.checks:
        status = "pass" if check.passed else "FAIL"
        print(f"[{status}] {check.module}/{check.name}: {check.detail}")
    print(f"{len(report.checks) - len(report.failures)}/{len(report.checks)} checks passed")
    return EXIT_OK if report.ok else EXIT_FAILURE


def cmd_conjecture(args) -> int:
    cfg = _config_from_args(args)
    if args.part == "a":
        report = explorer.scan_conjecture_a(cfg)
    else:
        report = explorer.scan_conjecture_b(cfg)
    payload = explorer.report_json_bytes(report)
    if args.out == "-":
        sys.stdout.buffer.write(payload)
    else:
        try:
            with open(args.out, "wb") as fh:
                fh.write(payload)
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc}") from exc
    return EXIT_OK if report.ok else EXIT_FAILURE


def cmd_report(args) -> int:
    try:
        report = explorer.load_report(args.infile)
    except (OSError, ValueError, KeyError) as exc:
        raise InputError(f"cannot load report {args.infile}: {exc}") from exc
    try:
        explorer.emit_report(report, args.format, args.out)
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc}") from exc
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tpgl",
        description="Exact total positivity for GL_n: membership checks, "
                    "flag/torus constructions, and seeded conjecture scans.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="total-positivity membership report")
    p.add_argument("matrix", help="matrix file")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("tilde", help="flag-matching upper-unitriangular mate")
    p.add_argument("matrix", help="lower-unitriangular matrix file")
    p.set_defaults(fn=cmd_tilde)

    p = sub.add_parser("intersect", help="torus frame of a flag pair")
    p.add_argument("u_matrix", help="totally positive lower-unitriangular u")
    p.add_argument("v_matrix", help="totally positive lower-unitriangular v")
    p.set_defaults(fn=cmd_intersect)

    p = sub.add_parser("pi", help="eigenvalues and diagonalizing frame")
    p.add_argument("matrix", help="totally positive matrix file")
    p.set_defaults(fn=cmd_pi)

    p = sub.add_parser("suite", help="run the sampled property suite")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10)
    p.set_defaults(fn=cmd_suite)

    p = sub.add_parser("conjecture", help="run a scan and emit a JSON report")
    p.add_argument("--part", choices=["a", "b"], required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--grid", default="1/16:16", help="LO:HI range for diagonals")
    p.add_argument("--p-tol", default="1/64", help="bracket resolution for part b")
    p.add_argument("--param-grid", default=None,
                   help="optional LO:HI range for unipotent parameters")
    p.add_argument("--out", default="-", help="output path, - for stdout")
    p.set_defaults(fn=cmd_conjecture)

    p = sub.add_parser("report", help="convert a saved JSON report")
    p.add_argument("--in", dest="infile", required=True, help="JSON report path")
    p.add_argument("--format", choices=["json", "csv"], required=True)
    p.add_argument("--out", required=True, help="output path")
    p.set_defaults(fn=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolationError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except TpglError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
