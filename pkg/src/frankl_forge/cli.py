"""Command-line entry point.

Exit codes: 0 success / confirmed counterexample, 1 property violation,
2 usage or parse error, 3 closure size guard exceeded.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from contextlib import contextmanager
from itertools import combinations

from .closure import sweep, union_closure
from .construct import build_family
from .core import ElementSet
from .errors import ClosureLimitExceeded, SfParseError, UnsupportedParameterError
from .io import emit_report, emit_sf, parse_sf
from .verify import intervals_disjoint, intervals_disjoint_oracle, verify_system

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
MAX_CLOSURE_ENV = "FRANKL_FORGE_MAX_CLOSURE"
DEFAULT_MAX_CLOSURE = 10_000_000


class UsageError(Exception):
    pass


def max_closure_size() -> int:
    raw = os.environ.get(MAX_CLOSURE_ENV)
    if raw is None:
        return DEFAULT_MAX_CLOSURE
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{MAX_CLOSURE_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{MAX_CLOSURE_ENV} must be positive")
    return value


@contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="\n") as fh:
            yield fh


def _read_input(path):
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, newline="") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _check_x(x: int) -> None:
    if x < 2:
        raise UsageError(f"-x must be at least 2 (got {x})")


def cmd_construct(args) -> int:
    _check_x(args.x)
    system = build_family(args.x)
    text = emit_sf(system) if args.format == "human" else emit_report(system, "json")
    with _output(args.output) as out:
        out.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    system = parse_sf(_read_input(args.input))
    report = verify_system(system)
    with _output(args.output) as out:
        out.write(emit_report(report, args.format))
    ok = report.reimer_ok if args.require_reimer_only else report.is_counterexample
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_closure(args) -> int:
    if (args.x is None) == (args.input is None):
        raise UsageError("closure needs exactly one of -x or --input")
    if args.x is not None:
        _check_x(args.x)
        family = build_family(args.x).smalls
    else:
        family = parse_sf(_read_input(args.input)).smalls
    result = union_closure(family, max_size=max_closure_size())
    with _output(args.output) as out:
        out.write(emit_report(result, args.format, histogram=args.histogram,
                              list_sets=args.list))
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.x_from < 2 or args.x_from > args.x_to:
        raise UsageError(f"need 2 <= --from <= --to, got {args.x_from}..{args.x_to}")
    rows = sweep(args.x_from, args.x_to, max_size=max_closure_size())
    with _output(args.output) as out:
        out.write(emit_report(rows, args.format))
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    """Compare the fast disjointness test with interval enumeration."""
    _check_x(args.x)
    system = build_family(args.x)
    disagreements = 0
    pairs = 0
    for p, q in combinations(range(len(system)), 2):
        (sp, fp), (sq, fq) = system[p], system[q]
        pairs += 1
        if intervals_disjoint(sp, fp, sq, fq) != intervals_disjoint_oracle(sp, fp, sq, fq):
            disagreements += 1
            print(f"disagreement on pair ({p}, {q})", file=sys.stderr)
    rng = random.Random(args.seed)
    for _ in range(args.random):
        n = rng.randint(1, 12)
        pair = []
        for _ in range(2):
            upper = rng.getrandbits(n)
            lower = upper & rng.getrandbits(n)
            pair += [ElementSet(n, lower), ElementSet(n, upper)]
        sp, fp, sq, fq = pair
        if intervals_disjoint(sp, fp, sq, fq) != intervals_disjoint_oracle(sp, fp, sq, fq):
            disagreements += 1
            print(f"disagreement on random instance {pair}", file=sys.stderr)
    with _output(args.output) as out:
        out.write(f"pairs checked: {pairs}\nrandom instances: {args.random}\n"
                  f"disagreements: {disagreements}\n")
    return EXIT_OK if disagreements == 0 else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frankl-forge",
        description="Counterexamples to 'Reimer's conditions imply abundance'.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("human", "json")):
        p.add_argument("-o", "--output", help="output file (default: stdout)")
        p.add_argument("--format", choices=formats, default="human")

    p = sub.add_parser("construct", help="write the S/F document for minimum set size x")
    p.add_argument("-x", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check Reimer's conditions and abundance of an S/F file")
    p.add_argument("input", nargs="?", help="S/F file (default: stdin)")
    p.add_argument("--require-reimer-only", action="store_true",
                   help="succeed when Reimer's conditions hold, whatever abundance says")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("closure", help="compute the union closure of a family")
    p.add_argument("-x", type=int)
    p.add_argument("-i", "--input", help="S/F file instead of -x ('-' for stdin)")
    p.add_argument("--histogram", action="store_true", help="show counts per set size")
    p.add_argument("--list", action="store_true", help="list every closure member")
    common(p)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("sweep", help="compare closure sizes with the closed-form conjecture")
    p.add_argument("--from", dest="x_from", type=int, required=True)
    p.add_argument("--to", dest="x_to", type=int, required=True)
    common(p, ("human", "json", "csv"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle-check", help="cross-check the fast interval test by enumeration")
    p.add_argument("-x", type=int, required=True)
    p.add_argument("--random", type=int, default=10_000, help="extra random instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, UnsupportedParameterError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SfParseError as exc:
        print(f"{parser.prog} {args.command}: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ClosureLimitExceeded, MemoryError) as exc:
        print(f"{parser.prog} {args.command}: {exc or 'out of memory'}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
