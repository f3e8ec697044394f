"""Command line interface.

Exit codes: 0 all requested checks pass, 1 usage/input errors (including
determinant-condition violations and order-cap overflows), 2 a
verification check failed; the failing check is reported as a single
JSON line on stderr and inside the report of any written document.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import AHilbError, InputError
from .group import DEFAULT_MAX_ORDER
from .pipeline import run_pipeline
from .render import quiver_svg, triangulation_svg
from .serialize import jsonable, to_json

ENV_MAX_ORDER = "AHILB_MAX_ORDER"


def _add_common(p, with_check=True):
    p.add_argument("spec", help="group spec, e.g. '1/11(1,2,8)' or '1/3(1,2,0);1/3(0,1,2)'")
    p.add_argument("--json", metavar="PATH", help="write the full JSON document")
    p.add_argument("--svg", metavar="PATH", help="write the decorated simplex as SVG")
    p.add_argument("--quiver-svg", metavar="PATH", help="write the quiver domain as SVG")
    if with_check:
        p.add_argument(
            "--check",
            default="all",
            choices=["all", "fan", "recipe", "relations", "cohomology"],
            help="which verification family to report (default: all)",
        )
    p.add_argument("--max-order", type=int, default=None, help="group order cap")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized spot checks")
    p.add_argument("--quiet", action="store_true", help="suppress the console summary")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="ahilb",
        description=(
            "Compute the toric resolution of C^3 by a diagonal abelian subgroup of "
            "SL(3,C) via its cluster Hilbert scheme, decorate it with characters, "
            "and certify the character/cohomology correspondence."
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("compute", help="run the pipeline and write artifacts"))
    _add_common(sub.add_parser("check", help="run the pipeline for its exit code"))
    _add_common(sub.add_parser("render", help="render SVG views"), with_check=False)
    return ap


def _max_order(args):
    if args.max_order is not None:
        return args.max_order
    env = os.environ.get(ENV_MAX_ORDER)
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"bad {ENV_MAX_ORDER} value {env!r}") from exc
    return DEFAULT_MAX_ORDER


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    which = getattr(args, "check", "all")
    try:
        art = run_pipeline(args.spec, which=which, max_order=_max_order(args), seed=args.seed)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except AHilbError as exc:
        record = {"failure": {"error": str(exc), "detail": jsonable(exc.detail)}}
        print(json.dumps(record, sort_keys=True), file=sys.stderr)
        return 2

    wrote = []
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(to_json(art))
        wrote.append(args.json)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(triangulation_svg(art))
        wrote.append(args.svg)
    if getattr(args, "quiver_svg", None):
        with open(args.quiver_svg, "w", encoding="utf-8") as fh:
            fh.write(quiver_svg(art))
        wrote.append(args.quiver_svg)

    report = art.report
    if not args.quiet:
        c = report.counts
        print(
            f"{args.spec}: |A|={c.get('order')} triangles={c.get('triangles')} "
            f"b2={c.get('b2')} b4={c.get('b4')}"
        )
        for name, entry in report.checks.items():
            if entry["status"] != "skipped" or args.command == "compute":
                print(f"  {name:13s} {entry['status']}")
        total = sum(report.timings.values())
        print(f"  time {total:.3f}s")
        if wrote:
            print("  wrote " + ", ".join(wrote))
    if not report.passed:
        print(json.dumps({"failure": jsonable(report.failure)}, sort_keys=True), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
