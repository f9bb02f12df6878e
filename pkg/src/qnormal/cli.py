"""Command line entry point ``qnormal``.

``recognize`` exits 0 for DISC_FOUND, 1 for NO_DISC and 2 for UNSUPPORTED.
Every subcommand exits 3 on unreadable input or an exceeded resource cap.
A FILE argument may also name a bundled triangulation, e.g. ``@trefoil``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import corpus
from .coordinates import QUAD, STANDARD, matching_system
from .enumeration import (
    BACKEND,
    DEFAULT_MAX_RAYS,
    DEFAULT_ORACLE_LIMIT,
    OracleLimitError,
    RayLimitError,
    enumerate_bruteforce,
    enumerate_dd,
)
from .triangulation import TriangulationError, load_triangulation
from .unknot import (
    EnumerationMismatchError,
    PipelineConfig,
    Verdict,
    cross_check,
    recognize,
    survey,
    survey_to_json,
)

EXIT_CODES = {Verdict.DISC_FOUND: 0, Verdict.NO_DISC: 1, Verdict.UNSUPPORTED: 2}
EXIT_ERROR = 3


def _load(arg: str):
    if arg.startswith("@"):
        return corpus.load(arg[1:])
    return load_triangulation(arg)


def _config(args) -> PipelineConfig:
    return PipelineConfig(
        coords=args.coords,
        filter=not args.no_filter,
        oracle=args.oracle,
        max_rays=args.max_rays,
        output_format="json" if args.json else "text",
        jobs=args.jobs,
    )


def cmd_recognize(args) -> int:
    report = recognize(_load(args.file), _config(args))
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return EXIT_CODES[report.verdict]


def cmd_survey(args) -> int:
    tri = _load(args.file)
    cfg = _config(args)
    rows = survey(tri, cfg)
    if args.json:
        sys.stdout.write(survey_to_json(tri, rows, cfg))
        return 0
    print(f"{len(rows)} {cfg.coords} vertex surfaces")
    print(f"{'#':>4} {'chi':>4} {'comp':>4} {'orient':>6} {'weight':>6} {'size':>4}  boundary  disc")
    for k, r in enumerate(rows):
        d = r.to_dict()
        classes = ",".join("(" + " ".join(map(str, c)) + ")" for c in d["boundary_classes"]) or "-"
        disc = {True: "yes", False: "no", None: "-"}[r.essential_disc]
        print(
            f"{k:>4} {d['euler_characteristic']:>4} {d['components']:>4} "
            f"{'yes' if d['orientable'] else 'no':>6} {d['weight']:>6} {d['size']:>4}  "
            f"{classes}  {disc}"
        )
    return 0


def cmd_crosscheck(args) -> int:
    report = cross_check(_load(args.file), args.oracle_limit, args.max_rays)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        for kind, n in sorted(report.counts.items()):
            print(f"{kind}: {n} vertices")
        print(
            "quad vertices whose canonical standard vector is a standard vertex: "
            f"{report.quad_vertices_at_standard_vertices}"
        )
        for w in report.warnings:
            print(f"warning: {w}")
        for d in report.discrepancies:
            print(f"DISCREPANCY: {d}")
        print("PASS" if report.passed else "FAIL")
    return 0 if report.passed else 1


def cmd_dump_equations(args) -> int:
    system = matching_system(_load(args.file), args.kind)
    for label, row in zip(system.labels, system.rows):
        terms = " ".join(f"{c:+d}*x{j}" for j, c in enumerate(row) if c) or "0"
        print(f"{' '.join(map(str, label))}: {terms} = 0")
    return 0


def cmd_enumerate(args) -> int:
    system = matching_system(_load(args.file), args.kind)
    if args.oracle:
        result = enumerate_bruteforce(system, args.oracle_limit)
    else:
        result = enumerate_dd(system, not args.no_filter, args.max_rays)
    if args.dump_rays:
        with open(args.dump_rays, "w") as fh:
            fh.write(result.dump_rays())
    if args.json:
        print(result.to_json(timing=False))
    else:
        print(f"{len(result)} {system.kind} vertex solutions ({result.statistics['method']})")
        sys.stdout.write(result.dump_rays())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qnormal", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    p.add_argument("--version", action="version", version=f"qnormal (kernel: {BACKEND})")
    sub = p.add_subparsers(dest="command", required=True)

    def pipeline(sp):
        sp.add_argument("file", help="triangulation file, or @name for a bundled one")
        sp.add_argument("--coords", choices=[QUAD, STANDARD], default=QUAD)
        sp.add_argument("--no-filter", action="store_true", help="disable quad filtering in DD")
        sp.add_argument("--oracle", action="store_true", help="also run brute force and compare")
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--max-rays", type=int, default=DEFAULT_MAX_RAYS)
        sp.add_argument("--jobs", type=int, default=1, help="worker processes for realization")

    sp = sub.add_parser("recognize", help="look for an essential disc among Q-vertex surfaces")
    pipeline(sp)
    sp.set_defaults(func=cmd_recognize)

    sp = sub.add_parser("survey", help="invariants of every vertex surface")
    pipeline(sp)
    sp.set_defaults(func=cmd_survey)

    sp = sub.add_parser("crosscheck", help="compare enumeration methods and coordinate systems")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--oracle-limit", type=int, default=DEFAULT_ORACLE_LIMIT)
    sp.add_argument("--max-rays", type=int, default=DEFAULT_MAX_RAYS)
    sp.set_defaults(func=cmd_crosscheck)

    sp = sub.add_parser("dump-equations", help="print a matching system")
    sp.add_argument("file")
    sp.add_argument("--kind", choices=[QUAD, STANDARD], default=QUAD)
    sp.set_defaults(func=cmd_dump_equations)

    sp = sub.add_parser("enumerate", help="vertex solutions of a matching system")
    sp.add_argument("file")
    sp.add_argument("--kind", choices=[QUAD, STANDARD], default=QUAD)
    sp.add_argument("--no-filter", action="store_true")
    sp.add_argument("--oracle", action="store_true", help="use the brute-force enumerator")
    sp.add_argument("--oracle-limit", type=int, default=DEFAULT_ORACLE_LIMIT)
    sp.add_argument("--max-rays", type=int, default=DEFAULT_MAX_RAYS)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--dump-rays", metavar="PATH", help="write vertex vectors to PATH")
    sp.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (
        OSError,
        KeyError,
        TriangulationError,
        RayLimitError,
        OracleLimitError,
        EnumerationMismatchError,
        ValueError,
    ) as exc:
        print(f"qnormal: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
