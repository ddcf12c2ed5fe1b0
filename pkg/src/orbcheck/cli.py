"""Command line interface.

Exit codes: 0 all checks pass, 1 a check fails, 2 usage or input error.
Machine output is line oriented and deterministic.
"""

from __future__ import annotations

import argparse
import sys

from .catalog import CATALOG_NAMES, catalog_scenario
from .errors import OrbcheckError, ParseError
from .pipeline import run_pipeline
from .scenario import parse_scenario

EXPLANATIONS = {
    "atlas.unitary": "Linear parts of changes of charts are exactly unitary.",
    "atlas.containment": "Change images stay inside the target chart domain.",
    "atlas.witness": "Redundant changes over one overlap differ by a group element.",
    "seifert.free": "The lifted action on frames has no fixed points off the identity.",
    "seifert.equivariance": "Lifted left action commutes with the right frame action.",
    "seifert.well_defined": "Gluing output is independent of representative and change.",
    "seifert.cocycle": "Composite gluings satisfy f_ki = f_kj . f_ji on classes.",
    "seifert.fiber": "Stabilizer order at the basepoint (Seifert fiber descriptor).",
    "taut.detM1": "Rescaled Gram matrices of fundamental fields have determinant one.",
    "taut.orbit_volume": "Orbit volumes in the rescaled metric equal 2*pi.",
    "taut.invariance": "u0 and M0 are constant along each sampled orbit.",
    "tk.closed": "The transverse form is closed: d omega = 0 exactly.",
    "tk.kernel": "Vertical contractions of the transverse form vanish exactly.",
    "tk.positive": "omega(J.,.) is positive definite transversally at samples.",
    "betti.full": "Rational Betti numbers of the covering complex.",
    "betti.inv": "Dimensions of the group-invariant cohomology.",
    "kahler.pairing": "Top cup power of the chosen class against the cycle.",
    "hlt": "Cup with omega^k maps invariant H^(n-k) isomorphically onto H^(n+k).",
    "pd": "The cup pairing to the fundamental class is nondegenerate.",
}


def _read_scenario(target: str):
    if target.startswith("catalog:"):
        return catalog_scenario(target.split(":", 1)[1])
    with open(target, "r", encoding="utf-8") as fh:
        return parse_scenario(fh.read())


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="orbcheck", description="Orbifold structure checks")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario file or catalog entry")
    run.add_argument("target", help="scenario file path, or catalog:<name>")
    run.add_argument("--format", choices=("human", "machine"), default="human")
    run.add_argument("--samples", type=int, default=None, help="override sample counts")
    run.add_argument("--tol", type=float, default=None, help="override numeric tolerance")

    sub.add_parser("list-catalog", help="list built-in scenarios")

    explain = sub.add_parser("explain", help="describe a check id")
    explain.add_argument("check", help="check id, e.g. seifert.cocycle")

    args = parser.parse_args(argv)

    if args.command == "list-catalog":
        for name in CATALOG_NAMES:
            print(name)
        return 0

    if args.command == "explain":
        key = args.check
        while key and key not in EXPLANATIONS:
            key = key.rsplit(".", 1)[0] if "." in key else ""
        if not key:
            print(f"unknown check id {args.check!r}", file=sys.stderr)
            return 2
        print(f"{key}: {EXPLANATIONS[key]}")
        return 0

    try:
        scenario = _read_scenario(args.target)
        report = run_pipeline(scenario, samples=args.samples, tol=args.tol)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError:
        print(f"no such scenario file: {args.target}", file=sys.stderr)
        return 2
    except OrbcheckError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    out = report.to_machine() if args.format == "machine" else report.to_human()
    sys.stdout.write(out)
    return 0 if report.overall else 1


if __name__ == "__main__":
    sys.exit(main())
