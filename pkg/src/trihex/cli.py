"""Command-line front door: numeral conversion and arithmetic, prefractal
generation, exact membership queries, dimension reports, rendering, and
the construction equivalence check.

Exit codes: 0 success, 1 domain/resource error (one-line diagnostic on
stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction

from .dimension import box_count_estimate, report_to_json
from .errors import DomainError, ResourceError
from .fractal import (
    DEFAULT_MAX_SQUARES,
    ifs_prefractal,
    member,
    prefractal_by_digits,
    prefractal_to_json,
)
from .radix import (
    DigitSystem,
    add,
    carry_free,
    digits_to_rational,
    format_numeral,
    int_to_digits,
    parse_numeral,
)
from .render import rasterize, write_pbm, write_svg

_RATIONAL_RE = re.compile(r"\A[+-]?\d+(/\d+)?\Z")


class _UsageError(Exception):
    """Bad flag combination; reported like an argparse usage failure."""


def _parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise DomainError(f"malformed rational {text!r} (expected p or p/q)")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise DomainError(f"zero denominator in rational {text!r}") from None


def _parse_point(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise DomainError(f"point must be 'x,y', got {text!r}")
    return _parse_rational(parts[0]), _parse_rational(parts[1])


def _emit(data: bytes | str, out: str | None) -> None:
    if isinstance(data, str):
        data = data.encode("ascii")
    if out:
        with open(out, "wb") as handle:
            handle.write(data)
    else:
        sys.stdout.write(data.decode("ascii"))


def _cmd_convert(args) -> int:
    if (args.integer is None) == (args.x is None):
        raise _UsageError("convert needs exactly one of --int or --x")
    if args.integer is not None:
        if args.base is None:
            raise _UsageError("convert --int needs --base")
        system = DigitSystem(args.base, args.balance)
        print(format_numeral(int_to_digits(args.integer, system)))
    else:
        print(digits_to_rational(parse_numeral(args.x)))
    return 0


def _cmd_add(args) -> int:
    print(format_numeral(add(parse_numeral(args.x), parse_numeral(args.y))))
    return 0


def _cmd_carryfree(args) -> int:
    print("true" if carry_free(parse_numeral(args.x), parse_numeral(args.y)) else "false")
    return 0


def _cmd_member(args) -> int:
    system = DigitSystem(args.base, args.balance)
    x, y = _parse_point(args.point)
    print("true" if member(x, y, system) else "false")
    return 0


def _cmd_gen(args) -> int:
    system = DigitSystem(args.base, args.balance)
    p = ifs_prefractal(system, args.depth, args.max_squares)
    if args.format == "json":
        _emit(prefractal_to_json(p) + "\n", args.out)
    elif args.format == "text":
        lines = "".join(f"{i} {j}\n" for i, j in p)
        _emit(lines, args.out)
    elif args.format == "pbm":
        _emit(write_pbm(rasterize(p)[1]), args.out)
    else:
        _emit(write_svg(p), args.out)
    return 0


def _cmd_dim(args) -> int:
    system = DigitSystem(args.base, args.balance)
    report = box_count_estimate(system, args.depth, args.max_squares)
    print(report_to_json(report))
    return 0


def _cmd_render(args) -> int:
    system = DigitSystem(args.base, args.balance)
    p = ifs_prefractal(system, args.depth, args.max_squares)
    data = write_pbm(rasterize(p)[1]) if args.format == "pbm" else write_svg(p)
    _emit(data, args.out)
    return 0


def _cmd_verify(args) -> int:
    system = DigitSystem(args.base, args.balance)
    geometric = ifs_prefractal(system, args.depth, args.max_squares)
    digitwise = prefractal_by_digits(system, args.depth, args.max_squares)
    if geometric == digitwise:
        print(f"equivalence: ok ({len(geometric)} squares)")
        return 0
    print(
        f"equivalence: MISMATCH at depth {args.depth} "
        f"({len(geometric)} geometric vs {len(digitwise)} digit squares)",
        file=sys.stderr,
    )
    return 1


def _add_system_flags(parser, depth: bool = False) -> None:
    parser.add_argument("--base", type=int, required=True, help="radix m (>= 2)")
    parser.add_argument("--balance", type=int, default=0,
                        help="balance offset b, 0 for the standard base (default 0)")
    if depth:
        parser.add_argument("--depth", type=int, required=True, help="construction depth n")
        parser.add_argument("--max-squares", type=int, default=DEFAULT_MAX_SQUARES,
                            help=f"abort above this many squares (default {DEFAULT_MAX_SQUARES})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trihex",
        description="Exact base-m / balanced base-m numerals and the plane "
                    "fractals their digit sums generate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="integer -> numeral, or numeral -> rational")
    p.add_argument("--int", dest="integer", type=int, help="integer to expand")
    p.add_argument("--x", help="numeral to evaluate, e.g. '[1 0 . 2]@3b0'")
    p.add_argument("--base", type=int, help="radix m (with --int)")
    p.add_argument("--balance", type=int, default=0, help="balance offset b (with --int)")
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("add", help="exact sum of two numerals of one system")
    p.add_argument("--x", required=True, help="first numeral")
    p.add_argument("--y", required=True, help="second numeral")
    p.set_defaults(func=_cmd_add)

    p = sub.add_parser("carryfree", help="can the two numerals be added with no carries?")
    p.add_argument("--x", required=True, help="first numeral")
    p.add_argument("--y", required=True, help="second numeral")
    p.set_defaults(func=_cmd_carryfree)

    p = sub.add_parser("member", help="exact membership of a rational point in the limit set")
    _add_system_flags(p)
    p.add_argument("--point", required=True, help="rational point 'x,y', e.g. '1/2,1/2'")
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("gen", help="generate the depth-n prefractal")
    _add_system_flags(p, depth=True)
    p.add_argument("--format", choices=["json", "text", "pbm", "svg"], default="json")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("dim", help="box-count dimension report as one JSON line")
    _add_system_flags(p, depth=True)
    p.set_defaults(func=_cmd_dim)

    p = sub.add_parser("render", help="render the depth-n prefractal")
    _add_system_flags(p, depth=True)
    p.add_argument("--format", choices=["pbm", "svg"], default="pbm")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("verify", help="check geometric vs digit construction equivalence")
    _add_system_flags(p, depth=True)
    p.set_defaults(func=_cmd_verify)

    return parser


def run(argv: list[str]) -> int:
    """Parse argv and execute; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed its message
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
