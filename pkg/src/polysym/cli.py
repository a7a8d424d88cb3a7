"""Command-line interface: ``polysym series | table | verify | version``."""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys

from . import __version__, checks, oracle, orbits, registry
from .qseries import VARS, Series, to_json

log = logging.getLogger("polysym")


class UsageError(Exception):
    pass


def _threads() -> int:
    raw = os.environ.get("POLYSYM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise UsageError(f"POLYSYM_THREADS must be an integer >= 1, got {raw!r}")
    return n


def _positive(name: str, minimum: int):
    def parse(s: str) -> int:
        try:
            v = int(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer") from None
        if v < minimum:
            raise argparse.ArgumentTypeError(f"{name} must be >= {minimum}")
        return v
    return parse


def series_csv(a: Series) -> str:
    cols = [v for v in VARS if v in a.spec.vars]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols + ["coeff"])
    for e, c in a.terms():
        w.writerow([e.get(v, 0) for v in cols] + [c])
    return buf.getvalue()


def cmd_series(args, out) -> int:
    info = registry.get(args.cls)
    try:
        spec = info.spec(args.qmax, args.tmax, args.vars)
    except ValueError as e:
        raise UsageError(str(e)) from None
    s = info.build(spec)
    if args.format == "text":
        out.write(s.to_text() + "\n")
    elif args.format == "json":
        out.write(to_json(s) + "\n")
    else:
        out.write(series_csv(s))
    return 0


def cmd_table(args, out) -> int:
    if args.source == "formula":
        rows = orbits.census(args.by, args.max, threads=_threads())
    else:
        try:
            rows = oracle.census(args.by, args.max)
        except oracle.RefusedScale as e:
            raise UsageError(str(e)) from None
    out.write(oracle.census_csv(rows))
    return 0


def cmd_verify(args, out) -> int:
    def report(name, res, dt):
        log.info("%s: %.2fs", name, dt)
        out.write(f"{'ok  ' if res is None else 'FAIL'} {name}\n")

    first = checks.run_checks(checks.checks_for(args.level), threads=_threads(), report=report)
    if first is not None:
        out.write(f"first difference: {first}\n")
        return 1
    out.write("all checks passed\n")
    return 0


def cmd_version(args, out) -> int:
    out.write(f"polysym {__version__}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polysym", description="Convex polyominoes by symmetry class.")
    p.add_argument("-v", "--verbose", action="store_true", help="log timings to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("series", help="print a generating series")
    s.add_argument("--class", dest="cls", required=True, choices=list(registry.CLASSES),
                   metavar="ID", help="one of: " + ", ".join(registry.CLASSES))
    s.add_argument("--qmax", type=_positive("qmax", 1), required=True, help="largest area kept")
    s.add_argument("--tmax", type=_positive("tmax", 0), default=None,
                   help="cap on every non-q variable (t for symmetry and orbit classes)")
    s.add_argument("--vars", default=None, help="alternative variable set, e.g. tq or xyq")
    s.add_argument("--format", choices=("text", "json", "csv"), default="text")
    s.set_defaults(func=cmd_series)

    t = sub.add_parser("table", help="census CSV by area or perimeter")
    t.add_argument("--by", choices=("area", "perimeter"), required=True)
    t.add_argument("--max", type=_positive("max", 1), required=True)
    t.add_argument("--source", choices=("formula", "oracle"), default="formula")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("--level", choices=tuple(checks.LEVELS), default="quick")
    v.set_defaults(func=cmd_verify)

    sub.add_parser("version", help="print the version").set_defaults(func=cmd_version)
    return p


def run(argv: list[str] | None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args, out)
    except UsageError as e:
        print(f"polysym: error: {e}", file=sys.stderr)
        return 2


def main(argv: list[str] | None = None) -> int:
    return run(argv)
