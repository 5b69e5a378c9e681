"""Command line entry point.

Exit status: 0 on success (and on a passing audit), 1 when an audit or a
tower check finds a violation, 2 on unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import docs
from .audit import AFFINE, DEFAULT_MAX_ATOMS, LINEAR, check_scc
from .exact import GeometryError, format_rational
from .generator import CANONICAL_NAMES, GenSpec, canonical, generate
from .lifting import DEPTH_ENV, build_tower, default_max_depth
from .measure import cone_volumes
from .polytope import center, polar

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_indices(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated facet indices, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="conevol", description="Exact cone volume measures and subspace concentration audits.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def with_input(p):
        p.add_argument("input", help="JSON document path, or - for standard input")
        return p

    with_input(sub.add_parser("hull", help="convex hull of a vertex document"))
    with_input(sub.add_parser("center", help="translate the centroid to the origin"))
    with_input(sub.add_parser("polar", help="polar polytope"))
    with_input(sub.add_parser("conevol", help="cone volume measure"))

    for verb, text in (("audit", "subspace concentration audit"), ("diagnose", "equality case diagnosis")):
        p = with_input(sub.add_parser(verb, help=text))
        p.add_argument("--mode", choices=(LINEAR, AFFINE), default=AFFINE)
        p.add_argument("--allow-noncentered", action="store_true")
        p.add_argument("--max-atoms", type=int, default=DEFAULT_MAX_ATOMS)

    p = with_input(sub.add_parser("lift", help="pyramid tower with a tracked facet set"))
    p.add_argument("--levels", type=int, default=None, help=f"tower depth (default: the cap from ${DEPTH_ENV})")
    p.add_argument("--track", type=_parse_indices, default=[0], help="facet indices, e.g. 0,3")
    p.add_argument("--allow-noncentered", action="store_true")

    p = sub.add_parser("gen", help="generate a random or named polytope")
    p.add_argument("--canonical", metavar="NAME", help="one of " + ", ".join(CANONICAL_NAMES))
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--vertices", type=int, default=6)
    p.add_argument("--range", type=int, default=5, dest="coordinate_range")
    p.add_argument("--denominator", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--symmetrize", action="store_true")
    p.add_argument("--no-center", action="store_true")
    return parser


def parse(argv: Sequence[str]) -> argparse.Namespace:
    return build_parser().parse_args(list(argv))


def _load(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise docs.DocumentError(f"malformed JSON: {exc}")


def run(args: argparse.Namespace) -> tuple:
    """Dispatch one verb; returns ``(exit_status, document)``."""
    verb = args.verb
    if verb == "gen":
        if args.canonical:
            try:
                p = canonical(args.canonical)
            except KeyError as exc:
                raise UsageError(exc.args[0])
        else:
            try:
                spec = GenSpec(args.dim, args.vertices, args.coordinate_range, args.seed,
                               args.symmetrize, not args.no_center, args.denominator)
            except ValueError as exc:
                raise UsageError(str(exc))
            p = generate(spec)
        return EXIT_OK, docs.polytope_doc(p)

    doc = _load(args.input)
    if verb == "hull":
        return EXIT_OK, docs.polytope_doc(docs.polytope_from_doc(doc))
    p = docs.polytope_from_doc(doc)
    if verb == "center":
        return EXIT_OK, docs.polytope_doc(center(p))
    if verb == "polar":
        return EXIT_OK, docs.polytope_doc(polar(p))
    if verb == "conevol":
        return EXIT_OK, docs.measure_doc(cone_volumes(p))
    if verb in ("audit", "diagnose"):
        report = check_scc(p, args.mode, args.allow_noncentered, args.max_atoms)
        if verb == "audit":
            return (EXIT_OK if report.passed else EXIT_VIOLATION), docs.report_doc(report)
        rows = [
            {"generators": list(r.candidate.generators), "dim": r.candidate.dim,
             "lhs": format_rational(r.lhs), "diagnosis": docs.diagnosis_doc(r.diagnosis)}
            for r in report.tight_rows
        ]
        return EXIT_OK, {"kind": report.kind, "diagnoses": rows}
    if verb == "lift":
        depth = default_max_depth() if args.levels is None else args.levels
        bad = [i for i in args.track if not 0 <= i < len(p.facets)]
        if bad:
            raise UsageError(f"facet indices out of range: {bad}")
        tower = build_tower(p, args.track, depth, allow_noncentered=args.allow_noncentered)
        out = docs.tower_doc(tower)
        ok = all(all(lv.get("checks", {}).values()) for lv in out["levels"])
        return (EXIT_OK if ok else EXIT_VIOLATION), out
    raise UsageError(f"unknown verb {verb!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parse(argv)
        status, out = run(args)
    except UsageError as exc:
        build_parser().print_usage(sys.stderr)
        print(json.dumps({"error": "usage", "message": str(exc)}))
        return EXIT_INPUT
    except GeometryError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return EXIT_INPUT
    json.dump(out, sys.stdout, indent=1)
    sys.stdout.write("\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
