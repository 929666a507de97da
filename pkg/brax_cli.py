#!/usr/bin/env python3
"""
Command-line front end for the braxtope toolkit.

    python3 brax_cli.py gen braxtope --d 4 --n 6 --out q46.json
    python3 brax_cli.py analyze q46.json --fvector --hvector
    python3 brax_cli.py verify --d 4 --n 6 --suite all
    python3 brax_cli.py realize --d 3 --n 7
    python3 brax_cli.py triangulate --d 4 --n 6 --check-shallow
    python3 brax_cli.py shell q46.json --colex
    python3 brax_cli.py export q46.json --format incidence

Exit status: 0 on success, 1 when a check fails, 2 on invalid input.
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

from check_reports import suite_passed
from face_lattice import f_vector, flag_vector, reference_comparand
from facet_families import InvalidParameters, PolytopeError, braxtope_facets, format_face
from polytope_document import (
    PolytopeDocument,
    compute_invariants,
    document_h_vector,
    dump_document,
    generate_document,
    incidence_rows,
    load_document,
    save_document,
)
from rational_geometry import format_rational, hull_facets, realize_braxtope
from shelling import colex_shelling_props, pulling_triangulation, shallow_check
from theorem_checks import SUITES, braxtope_lattice, family_check, run_suite

# Load environment
env_path = Path(__file__).parent / ".env"
if env_path.exists():
    load_dotenv(env_path)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INVALID = 0, 1, 2


def _emit(document: PolytopeDocument, out: Optional[str]) -> None:
    if out:
        save_document(document, out)
        print(f"✓ Wrote {document!r} to {out}")
    else:
        print(dump_document(document))


def cmd_gen(args) -> int:
    document = generate_document(args.kind, args.d, args.n, args.r)
    _emit(document, args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    document = load_document(args.file)
    lattice = document.lattice()
    show_all = not (args.fvector or args.flagvector or args.hvector or args.compare_reference)

    if args.fvector or show_all:
        print(f_vector(lattice))
    if args.flagvector or show_all:
        print(flag_vector(lattice))
    if args.hvector or show_all:
        h = document_h_vector(document, lattice)
        print(h if h is not None else "h: not available for a nonsimplicial family of this kind")
    if args.compare_reference:
        if document.d < 3 or document.n <= document.d:
            raise InvalidParameters("the reference comparand needs n > d >= 3")
        ours = flag_vector(lattice)
        theirs = flag_vector(reference_comparand(document.d, document.n))
        print(f"{'S':<12}{'family':>10}{'reference':>11}")
        for dims in sorted(ours.entries, key=lambda s: (len(s), s)):
            mark = "" if ours.entries[dims] == theirs.entries.get(dims) else "  *"
            label = "{" + ",".join(map(str, dims)) + "}"
            print(f"{label:<12}{ours.entries[dims]:>10}{theirs.entries.get(dims, 0):>11}{mark}")
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = []
    realization = None
    lattice = None
    if args.file:
        document = load_document(args.file)
        d, n = document.d, document.n
        family_report = family_check(d, n, document.facets)
        reports.append(family_report)
        if family_report.passed:
            lattice = document.lattice()
            realization = document.vertices
    elif args.d is not None and args.n is not None:
        d, n = args.d, args.n
    else:
        raise InvalidParameters("verify needs a FILE or both --d and --n")

    if suite_passed(reports):
        reports += run_suite(d, n, args.suite, lattice=lattice, realization=realization)

    if args.json:
        print(json.dumps([report.to_dict() for report in reports], indent=2))
    else:
        for report in reports:
            print(("✓ " if report.passed else "❌ ") + report.summary())
            for note in report.notes:
                print(f"    {note}")
    return EXIT_OK if suite_passed(reports) else EXIT_CHECK_FAILED


def cmd_realize(args) -> int:
    real = realize_braxtope(args.d, args.n, seed=args.seed)
    hull = hull_facets(real)
    if not hull.same_facets(braxtope_facets(args.d, args.n)):
        print("❌ Hull oracle disagrees with the braxtope facets", file=sys.stderr)
        return EXIT_CHECK_FAILED
    document = PolytopeDocument.from_family(braxtope_facets(args.d, args.n), vertices=real)
    if args.out:
        _emit(document, args.out)
    else:
        for i, point in enumerate(real.points):
            print(f"x_{i} = ({', '.join(format_rational(x) for x in point)})")
    print(f"✓ Hull oracle: {len(hull)} facets, {len(real.points)} points")
    return EXIT_OK


def cmd_triangulate(args) -> int:
    delta = pulling_triangulation(args.d, args.n)
    for i, simplex in enumerate(delta, start=1):
        print(f"J_{i} = {format_face(simplex)}")
    if args.check_shallow:
        result = shallow_check(delta, braxtope_lattice(args.d, args.n))
        print(f"shallow: {'true' if result.ok else 'false'}")
        if not result.ok:
            print(f"❌ {format_face(result.witness)} needs the {result.carrier_dim}-face {format_face(result.carrier)}",
                  file=sys.stderr)
            return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_shell(args) -> int:
    document = load_document(args.file)
    steps = colex_shelling_props(document.lattice(), document.facets)
    for k, step in enumerate(steps, start=1):
        g = format_face(step.minimal_face) if step.minimal_face is not None else "-"
        status = "ok" if step.ok else f"fails ({step.failed_property()})"
        print(f"{k:>3}  {format_face(step.facet):<24} G = {g:<16} {status}")
    if all(step.ok for step in steps):
        print(f"✓ Colex order is a shelling with simplex minimal faces ({len(steps)} steps)")
        return EXIT_OK
    print("❌ Colex order fails the shelling properties", file=sys.stderr)
    return EXIT_CHECK_FAILED


def cmd_export(args) -> int:
    document = load_document(args.file)
    if args.format == "json":
        document.invariants = compute_invariants(document)
        text = dump_document(document)
    else:
        text = "\n".join(incidence_rows(document))
    if args.out:
        Path(args.out).write_text(text + "\n", encoding='utf-8')
        print(f"✓ Wrote {args.format} export to {args.out}")
    else:
        print(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="brax_cli.py", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--verbose", action="store_true", help="log debug output to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="generate a facet family document")
    gen.add_argument("kind", choices=["braxtope", "multiplex", "cyclic", "rd-braxtope"])
    gen.add_argument("--d", type=int, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--r", type=int, default=None)
    gen.add_argument("--out", default=None)
    gen.set_defaults(handler=cmd_gen)

    analyze = commands.add_parser("analyze", help="print invariants of a document")
    analyze.add_argument("file")
    analyze.add_argument("--fvector", action="store_true")
    analyze.add_argument("--flagvector", action="store_true")
    analyze.add_argument("--hvector", action="store_true")
    analyze.add_argument("--compare-reference", action="store_true",
                         help="flag numbers beside the pyramid over a bipyramid over a polygon")
    analyze.set_defaults(handler=cmd_analyze)

    verify = commands.add_parser("verify", help="run a verification suite")
    verify.add_argument("file", nargs="?", default=None)
    verify.add_argument("--d", type=int, default=None)
    verify.add_argument("--n", type=int, default=None)
    verify.add_argument("--suite", choices=SUITES, default="all")
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(handler=cmd_verify)

    realize = commands.add_parser("realize", help="exact coordinates for a braxtope")
    realize.add_argument("--d", type=int, required=True)
    realize.add_argument("--n", type=int, required=True)
    realize.add_argument("--seed", type=int, default=None, help="overrides BRAX_SEED")
    realize.add_argument("--out", default=None)
    realize.set_defaults(handler=cmd_realize)

    triangulate = commands.add_parser("triangulate", help="the triangulation obtained by pulling x_0")
    triangulate.add_argument("--d", type=int, required=True)
    triangulate.add_argument("--n", type=int, required=True)
    triangulate.add_argument("--check-shallow", action="store_true")
    triangulate.set_defaults(handler=cmd_triangulate)

    shell = commands.add_parser("shell", help="colex shelling of a document's facets")
    shell.add_argument("file")
    shell.add_argument("--colex", action="store_true", required=True)
    shell.set_defaults(handler=cmd_shell)

    export = commands.add_parser("export", help="re-emit a document")
    export.add_argument("file")
    export.add_argument("--format", choices=["json", "incidence"], default="json")
    export.add_argument("--out", default=None)
    export.set_defaults(handler=cmd_export)
    return parser


def configure_logging(verbose: bool) -> None:
    level = "DEBUG" if verbose else os.getenv("BRAX_LOG_LEVEL", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run one command and return its exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return exit_.code if isinstance(exit_.code, int) else EXIT_INVALID
    configure_logging(args.verbose)

    try:
        return args.handler(args)
    except PolytopeError as error:
        print(f"❌ {error}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
