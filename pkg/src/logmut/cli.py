"""Command-line interface.

Subcommands: validate, mutate, decide, enumerate, render, report.

A DATUM argument is resolved in this order: "-" reads JSON from stdin; an
existing file path is read as JSON; otherwise it must be a named datum
(Tom, Jerry, or An(n)).

Exit codes:
  0  success (decide: verdict Yes)
  1  I/O or parse error (bad JSON, unknown name, bad polynomial text)
  2  invalid datum or ill-shaped wall-assignment input
  3  illegal mutation
  4  decide: verdict No
  5  decide: verdict Unknown
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .decider import (
    Certificate,
    Verdict,
    canonicalize,
    enumerate_zero_mutable,
    is_zero_mutable,
)
from .errors import (
    IllegalMutation,
    InvalidDatum,
    LogMutError,
    NotRankOne,
    NotRankTwo,
    ShapeMismatch,
    SubordinationRequired,
    TooFewEdges,
    WallSynthesisError,
)
from .logdatum import (
    LogDatum,
    component_types,
    datum_from_obj,
    datum_to_obj,
    fan_presentation,
    named,
    rank,
)
from .mutation import mutate_with_trace
from .render import RenderSpec, render_svg
from .wallfn import (
    WallAssignment,
    format_bipoly,
    generic_wall_assignment,
    is_generic,
    is_subordinate,
    joint_compatible,
    kinks,
)


def load_datum(token: str) -> LogDatum:
    if token == "-":
        return datum_from_obj(json.load(sys.stdin))
    if os.path.exists(token):
        with open(token) as fh:
            return datum_from_obj(json.load(fh))
    try:
        return named(token)
    except KeyError:
        raise ValueError(
            f"{token!r} is neither a file nor a named datum (Tom, Jerry, An(n))"
        )


def _print_datum(S: LogDatum) -> None:
    for i, edge in enumerate(S.edges, start=1):
        print(f"  {i}: e={edge.e} nu={edge.nu}")


def cmd_validate(args) -> int:
    S = load_datum(args.datum)
    try:
        rank_label = rank(S).value
    except TooFewEdges:
        rank_label = "none (fewer than 2 edges)"
    if args.json:
        print(
            json.dumps(
                {
                    "ok": True,
                    "datum": datum_to_obj(S),
                    "rank": rank_label,
                    "total_length": S.total_length,
                    "canonical_class": canonicalize(S),
                }
            )
        )
    else:
        print(f"valid log datum with {len(S)} edges (counterclockwise):")
        _print_datum(S)
        print(f"rank: {rank_label}   total length: {S.total_length}")
    return 0


def cmd_mutate(args) -> int:
    S = load_datum(args.datum)
    if not 1 <= args.edge <= len(S):
        raise IllegalMutation(
            f"edge index {args.edge} out of range 1..{len(S)}"
        )
    nu = S.edges[args.edge - 1].nu
    if args.part_value is not None:
        if args.part_value not in nu:
            raise IllegalMutation(
                f"edge {args.edge} has no part of value {args.part_value} "
                f"(nu={nu})"
            )
        k = nu.index(args.part_value) + 1
    else:
        k = args.part
    T, trace = mutate_with_trace(S, args.edge, k)
    if args.json:
        out = {"datum": datum_to_obj(T)}
        if args.trace:
            out["trace"] = trace
        print(json.dumps(out))
    else:
        if args.trace:
            for line in trace:
                print(f"# {line}")
        print(f"mutated datum ({len(T)} edges, counterclockwise):")
        _print_datum(T)
    return 0


def _verdict_exit(verdict: Verdict) -> int:
    return {"yes": 0, "no": 4, "unknown": 5}[verdict.kind]


def cmd_decide(args) -> int:
    S = load_datum(args.datum)
    verdict = is_zero_mutable(
        S,
        max_depth=args.max_depth,
        max_states=args.max_states,
        threads=args.threads,
    )
    cert = verdict.certificate
    if args.certificate and cert is not None:
        with open(args.certificate, "w") as fh:
            json.dump(cert.to_obj(), fh, indent=2)
            fh.write("\n")
    if args.json:
        print(
            json.dumps(
                {
                    "verdict": str(verdict),
                    "explored": verdict.explored,
                    "depth": verdict.depth,
                    "certificate": cert.to_obj() if cert else None,
                }
            )
        )
    else:
        if verdict.is_yes:
            print(
                f"Yes: zero-mutable in {len(cert.steps)} steps "
                f"(explored {verdict.explored} classes)"
            )
            for n, step in enumerate(cert.steps, start=1):
                print(f"  step {n}: edge {step.edge}, part {step.part}")
            print("terminal:")
            _print_datum(cert.terminal)
        elif verdict.is_no:
            print(
                f"No: not zero-mutable (explored all {verdict.explored} "
                f"reachable classes, depth {verdict.depth})"
            )
        else:
            print(
                f"Unknown: search limits reached (explored {verdict.explored} "
                f"classes, depth {verdict.depth})"
            )
    return _verdict_exit(verdict)


def cmd_enumerate(args) -> int:
    if os.path.exists(args.edges):
        with open(args.edges) as fh:
            raw = json.load(fh)
    else:
        raw = json.loads(args.edges)
    vectors = [tuple(int(c) for c in v) for v in raw]
    results = enumerate_zero_mutable(
        vectors,
        max_depth=args.max_depth,
        max_states=args.max_states,
        threads=args.threads,
    )
    if args.json:
        print(
            json.dumps(
                {
                    "edges": [list(v) for v in vectors],
                    "results": [
                        {
                            "partitions": [list(p) for p in assignment],
                            "verdict": str(verdict),
                            "steps": len(verdict.certificate.steps)
                            if verdict.certificate
                            else None,
                        }
                        for assignment, verdict in results
                    ],
                }
            )
        )
    else:
        yes = sum(1 for _, v in results if v.is_yes)
        print(
            f"{len(results)} partition assignments over edges "
            f"{vectors}: {yes} zero-mutable"
        )
        for assignment, verdict in results:
            extra = (
                f" in {len(verdict.certificate.steps)} steps"
                if verdict.is_yes
                else ""
            )
            print(f"  {assignment} -> {verdict}{extra}")
    return 0


def cmd_render(args) -> int:
    S = load_datum(args.datum)
    spec = RenderSpec(
        scale=args.scale,
        label_edges=args.labels,
        show_lattice_points=args.lattice_points,
    )
    text = render_svg(S, spec)
    if args.svg == "-":
        print(text)
    else:
        with open(args.svg, "w") as fh:
            fh.write(text)
        print(f"wrote {len(text)} bytes to {args.svg}")
    return 0


def _wall_checks(S: LogDatum, W: WallAssignment) -> dict:
    checks: dict = {"joint_compatible": joint_compatible(S, W)}
    sub = is_subordinate(S, W)
    checks["subordinate"] = {"ok": sub.ok, "problems": list(sub.problems)}
    if sub:
        gen = is_generic(S, W)
        checks["generic"] = {"ok": gen.ok, "problems": list(gen.problems)}
    else:
        checks["generic"] = None
    return checks


def _print_wall_checks(checks: dict) -> None:
    print("wall checks:")
    print(f"  joint compatible: {'yes' if checks['joint_compatible'] else 'no'}")
    sub = checks["subordinate"]
    print(f"  subordinate: {'yes' if sub['ok'] else 'no'}")
    for p in sub["problems"]:
        print(f"    - {p}")
    gen = checks["generic"]
    if gen is None:
        print("  generic: skipped (requires a subordinate assignment)")
    else:
        print(f"  generic: {'yes' if gen['ok'] else 'no'}")
        for p in gen["problems"]:
            print(f"    - {p}")


def cmd_report(args) -> int:
    S = load_datum(args.datum)
    fan = fan_presentation(S)
    report = component_types(S)
    kink_values = kinks(S)

    W = None
    seed_note = None
    if args.walls:
        with open(args.walls) as fh:
            W = WallAssignment.from_obj(json.load(fh))
    elif args.gen_walls is not None:
        W = generic_wall_assignment(S, args.gen_walls)
        seed_note = args.gen_walls
    checks = _wall_checks(S, W) if W is not None else None

    if args.json:
        out = {
            "fan": {
                "maximal_cones": [[list(g) for g in cone] for cone in fan.maximal_cones],
                "walls": [[list(g) for g in wall] for wall in fan.walls],
                "joint": list(fan.joint),
            },
            "components": [
                {"index": c.index, "label": c.label} for c in report.components
            ],
            "kinks": list(kink_values),
        }
        if W is not None:
            out["walls_input"] = W.to_obj()
            out["wall_checks"] = checks
        print(json.dumps(out))
        return 0

    print(f"datum ({len(S)} edges, counterclockwise):")
    _print_datum(S)
    print("fan presentation in L + Z (joint ray {}):".format(fan.joint))
    for i, cone in enumerate(fan.maximal_cones, start=1):
        print(f"  cone {i}: generated by {cone[0]}, {cone[1]}, {cone[2]}")
    print("  walls:", ", ".join(f"<{w[0]}, {w[1]}>" for w in fan.walls))
    print("boundary components:")
    for i, c in enumerate(report.components, start=1):
        print(f"  {i}: index {c.index}, {c.label}")
    print(f"kinks (one per wall): {kink_values}")
    if W is not None:
        if seed_note is not None:
            print(f"synthesized wall functions (seed {seed_note}):")
        else:
            print(f"wall functions from {args.walls}:")
        for i, wall in enumerate(W.factors, start=1):
            for km, f in enumerate(wall, start=1):
                print(f"  f[{i},{km}] = {format_bipoly(f)}")
        _print_wall_checks(checks)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logmut",
        description="Exact mutation calculus for log data on an oriented "
        "rank-2 lattice.",
        epilog="exit codes: 0 ok/Yes, 1 I/O or parse error, 2 invalid datum, "
        "3 illegal mutation, 4 No, 5 Unknown",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, datum=True):
        if datum:
            p.add_argument(
                "datum",
                help="datum JSON file, '-' for stdin, or a name: Tom, Jerry, An(n)",
            )
        p.add_argument("--json", action="store_true", help="machine-readable output")

    def add_limits(p):
        p.add_argument("--max-depth", type=int, default=32, metavar="N")
        p.add_argument("--max-states", type=int, default=10**6, metavar="N")
        p.add_argument(
            "--threads",
            type=int,
            default=1,
            metavar="N",
            help="parallel expansion workers (verdicts are unaffected)",
        )

    p = sub.add_parser("validate", help="check and normalize a datum")
    add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("mutate", help="apply one mutation")
    add_common(p)
    p.add_argument("--edge", type=int, required=True, metavar="J",
                   help="1-based counterclockwise edge index")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--part", type=int, default=1, metavar="K",
                       help="1-based index into the edge's partition (default 1)")
    group.add_argument("--part-value", type=int, metavar="V",
                       help="select the first part with this value instead")
    p.add_argument("--trace", action="store_true",
                   help="print which branch each edge followed")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("decide", help="decide zero-mutability")
    add_common(p)
    add_limits(p)
    p.add_argument("--certificate", metavar="PATH",
                   help="write the certificate JSON here on Yes")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser(
        "enumerate",
        help="decide all partition assignments over fixed edge vectors",
    )
    p.add_argument("--edges", required=True, metavar="JSON",
                   help='edge vectors as JSON, e.g. "[[3,0],[0,2],[-3,-2]]", '
                   "or a file containing them")
    add_common(p, datum=False)
    add_limits(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("render", help="render the polygon as SVG")
    add_common(p)
    p.add_argument("--svg", required=True, metavar="PATH",
                   help="output file, '-' for stdout")
    p.add_argument("--scale", type=int, default=40, metavar="N",
                   help="pixels per lattice unit (default 40)")
    p.add_argument("--labels", action="store_true", help="label each edge")
    p.add_argument("--lattice-points", action="store_true",
                   help="draw lattice points in the bounding box")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser(
        "report",
        help="fan presentation, component types, kinks, wall-function checks",
    )
    add_common(p)
    wall_group = p.add_mutually_exclusive_group()
    wall_group.add_argument("--walls", metavar="FILE",
                            help="wall-assignment JSON to check")
    wall_group.add_argument("--gen-walls", type=int, metavar="SEED",
                            help="synthesize a generic assignment")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except IllegalMutation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (
        InvalidDatum,
        TooFewEdges,
        NotRankOne,
        NotRankTwo,
        ShapeMismatch,
        SubordinationRequired,
        WallSynthesisError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LogMutError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main(sys.argv[1:]))


if __name__ == "__main__":
    entry()
