"""Command-line interface: ``roughprob approx|report|verify``.

Exit codes: 0 success, 2 parse/schema/flag error, 3 unknown name,
4 internal identity violation, 5 law counterexample found.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .document import SpaceDocument, load_space_document
from .errors import DocumentError, DomainTooLarge, SpaceError, UnknownLabel, UnknownLaw
from .report import IdentityViolation, render_approx, render_variable, render_verify
from .space import Event
from .variable import CDF_MODES
from .verifier import SuiteConfig, run_suite

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNKNOWN = 3
EXIT_IDENTITY = 4
EXIT_COUNTEREXAMPLE = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _csv_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _csv_fractions(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(part.strip()) for part in text.split(",") if part.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated fractions, got {text!r}") from None


def _load(path: str) -> SpaceDocument:
    try:
        return load_space_document(path)
    except (DocumentError, SpaceError) as exc:
        raise CliError(str(exc), EXIT_USAGE) from None


def resolve_event(doc: SpaceDocument, spec: str) -> Event:
    """A named event of the document, else a comma-separated label list."""
    space = doc.space()
    if spec in doc.events:
        return doc.event(spec, space)
    labels = [part.strip() for part in spec.split(",") if part.strip()]
    try:
        return space.universe.event(labels)
    except UnknownLabel as exc:
        raise CliError(f"{exc} (not an event name either)", EXIT_UNKNOWN) from None


def cmd_approx(args) -> int:
    doc = _load(args.file)
    event = resolve_event(doc, args.event)
    sys.stdout.write(render_approx(doc.space(), event))
    return EXIT_OK


def cmd_report(args) -> int:
    doc = _load(args.file)
    if args.variable not in doc.variables:
        known = ", ".join(sorted(doc.variables)) or "none"
        raise CliError(f"unknown variable {args.variable!r} (defined: {known})", EXIT_UNKNOWN)
    var = doc.variable(args.variable)
    try:
        text = render_variable(var, args.variable, args.cdf_mode)
    except IdentityViolation as exc:
        raise CliError(str(exc), EXIT_IDENTITY) from None
    sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    config = SuiteConfig(
        n_max=args.n_max,
        seeds=args.seeds,
        variables_per_space=args.variables_per_space,
        affine_constants=args.affine_constants,
        laws=args.laws,
        include_cover_variant=args.include_cover_variant,
        max_counterexamples=args.max_counterexamples,
        allow_large=args.allow_large,
        sample=args.sample,
        workers=args.workers,
    )
    try:
        reports = run_suite(config)
    except (DomainTooLarge, UnknownLaw, ValueError) as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    sys.stdout.write(render_verify(reports, as_json=args.json, timings=args.timings))
    if any(r.role == "law" and r.status == "fail" for r in reports):
        return EXIT_COUNTEREXAMPLE
    if any(not r.ok for r in reports):
        return EXIT_IDENTITY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roughprob",
        description="Exact rough probability on finite approximation spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approx", help="lower/upper inverse and rough probability of an event")
    p.add_argument("file", help="space document (JSON)")
    p.add_argument("--event", required=True, help="event name from the document, or labels such as \"1,3,5\"")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("report", help="singleton masses, distribution, expectation and variance of a variable")
    p.add_argument("file", help="space document (JSON)")
    p.add_argument("--variable", required=True)
    p.add_argument("--cdf-mode", choices=CDF_MODES, default="singleton-sum")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify", help="sweep the law catalog over enumerated spaces")
    p.add_argument("--n-max", type=int, default=3, help="largest universe size (default 3)")
    p.add_argument("--seeds", type=_csv_ints, default=(1, 2),
                   help="one random measure per seed, besides the uniform one (default 1,2)")
    p.add_argument("--variables-per-space", type=int, default=2,
                   help="random integer variables per space, besides the identity (default 2)")
    p.add_argument("--affine-constants", type=_csv_fractions, default=SuiteConfig.affine_constants,
                   help="grid for a and b in the affine laws (default 0,1,-1,2,-2,1/2)")
    p.add_argument("--laws", type=lambda s: tuple(x.strip() for x in s.split(",") if x.strip()),
                   default=None, help="comma-separated law ids (default: all)")
    p.add_argument("--include-cover-variant", action="store_true",
                   help="treat the cover reading of the total-probability bound as a law")
    p.add_argument("--max-counterexamples", type=int, default=3, help="kept per law (default 3)")
    p.add_argument("--allow-large", action="store_true", help="permit exhaustive n = 4")
    p.add_argument("--sample", type=int, default=0, metavar="K",
                   help="random maps per size above the exhaustive limit (up to n = 6)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true", help="full report as JSON")
    p.add_argument("--timings", action="store_true", help="include elapsed times (output no longer byte-stable)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"roughprob: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
