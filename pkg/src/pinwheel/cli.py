"""Command-line interface: generation, rendering, verification, algebra, K-theory."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import algebra as alg
from . import geometry as geo
from . import ktheory as kt
from . import tower as tw
from .verify import run_suites


def _dump_json(data, path: str | None) -> None:
    text = json.dumps(data, indent=1, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_decompose(args) -> int:
    if args.all:
        cands = geo.find_decompositions(geo.PROTOTILES[0])
        listing = []
        for cand in cands:
            listing.append([
                {"proto": pl.proto, "angle": pl.pose.angle.to_json(),
                 "tx": pl.pose.translation.x.to_json(), "ty": pl.pose.translation.y.to_json()}
                for pl in cand
            ])
        _dump_json({"candidates": listing, "count": len(cands)}, args.out)
        print(f"{len(cands)} candidate decompositions", file=sys.stderr)
        return 0
    try:
        rule = geo.pinwheel_rule()
    except geo.NoMatchingDecomposition as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _dump_json(rule.to_json(), args.out)
    if args.svg:
        parts = []
        for root in (0, 1):
            parts.append(geo.patch_to_svg(geo.iterate(root, 1), labels=True))
        with open(args.svg, "w") as fh:
            fh.write("\n".join(parts) + "\n")
    return 0


def cmd_patch(args) -> int:
    try:
        patch = geo.iterate(args.root, args.level)
    except geo.ResourceGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1
    n0, n1 = geo.type_counts(patch)
    print(f"{len(patch.tiles)} tiles ({n0} p0, {n1} p1)")
    if args.json:
        _dump_json(geo.patch_to_json(patch), args.json)
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(geo.patch_to_svg(patch, labels=args.labels,
                                      punctures=args.punctures) + "\n")
    return 0


def cmd_verify(args) -> int:
    report = run_suites(args.suite)
    _dump_json(report, args.out)
    return 0 if report["passed"] else 1


def _load_expressions(args) -> list[alg.AlgebraElement]:
    if args.expr:
        with open(args.expr) as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    else:
        lines = args.text
    return [alg.parse_element(ln) for ln in lines]


def cmd_algebra(args) -> int:
    try:
        elements = _load_expressions(args)
    except ValueError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    if not elements:
        print("no expressions given", file=sys.stderr)
        return 1
    if args.action == "multiply":
        out = elements[0]
        for e in elements[1:]:
            out = alg.multiply(out, e)
        print(alg.to_text(out))
    elif args.action == "adjoint":
        print(alg.to_text(alg.adjoint(elements[0])))
    elif args.action == "norm":
        lo, hi = tw.norm_estimate(tw.psi(elements[0]))
        print(f"[{lo!r}, {hi!r}]")
    return 0


def cmd_ktheory(args) -> int:
    try:
        if args.op == "eq":
            x, y = (kt.LimitElement.parse(t) for t in args.args[:2])
            print("true" if kt.limit_equal(x, y) else "false")
        elif args.op == "add":
            x, y = (kt.LimitElement.parse(t) for t in args.args[:2])
            print(kt.limit_add(x, y))
        elif args.op == "invariants":
            x = kt.LimitElement.parse(args.args[0])
            p = kt.invariants(x)
            print(f"q={p.q} r={p.r}")
        elif args.op == "nonsplit":
            report = kt.nonsplit_certificate(args.bound)
            _dump_json({"bound": report.bound, "depth": report.depth,
                        "splits": report.splits, "detail": report.detail}, args.out)
            return 0 if not report.splits else 1
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_simplicity(args) -> int:
    try:
        frac = Fraction(args.arc_length).limit_denominator(10 ** 9)
        arc = tw.full_circle_arc() if frac >= 1 else tw.arc_of_length(frac)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if frac <= 0:
        print("error: arc length must be positive", file=sys.stderr)
        return 1
    try:
        g = _parse_generator(args.generator)
        m, cert = tw.simplicity_stage(arc, g)
    except (ValueError, tw.TowerError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"M = {m}")
    if args.out:
        payload = {
            "M": m,
            "arcs": [list(pair) for pair in tw.normalized_certain_arcs(cert.arcs())],
            "families": [
                {"shift_theta_steps": f.shift_steps,
                 "p0_pattern": f.p0_pattern, "p1_pattern": f.p1_pattern}
                for f in cert.families
            ],
        }
        _dump_json(payload, args.out)
    return 0


def _parse_generator(spec: str) -> alg.Generator:
    # format: k,proto,row,col e.g. "1,0,3,5"
    parts = spec.split(",")
    if len(parts) != 4:
        raise ValueError(f"generator spec needs k,proto,row,col: {spec!r}")
    return alg.Generator(int(parts[0]), int(parts[1]), parts[2], parts[3])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pinwheel",
                                 description="exact pinwheel tiling toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="search or emit the substitution rule")
    p.add_argument("--all", action="store_true", help="list every decomposition found")
    p.add_argument("--pinwheel", action="store_true", help="emit the filtered rule (default)")
    p.add_argument("--out", help="output JSON path (default stdout)")
    p.add_argument("--svg", help="write an SVG page of omega(p0) and omega(p1)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("patch", help="generate a substitution patch")
    p.add_argument("-N", "--level", type=int, required=True)
    p.add_argument("--root", type=int, default=0, choices=(0, 1))
    p.add_argument("--svg", help="SVG output path")
    p.add_argument("--json", help="JSON output path")
    p.add_argument("--labels", action="store_true")
    p.add_argument("--punctures", action="store_true")
    p.set_defaults(func=cmd_patch)

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", default="all",
                   choices=("geometry", "algebra", "tower", "ktheory", "all"))
    p.add_argument("--out", help="write the JSON report to a file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("algebra", help="evaluate algebra expressions")
    p.add_argument("--expr", help="file with one expression per line")
    p.add_argument("--text", action="append", default=[],
                   help="inline expression (repeatable)")
    p.add_argument("--action", required=True, choices=("multiply", "adjoint", "norm"))
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("ktheory", help="K-theory limit-group queries")
    p.add_argument("op", choices=("eq", "add", "invariants", "nonsplit"))
    p.add_argument("args", nargs="*", help='elements like "0:(1,0)"')
    p.add_argument("--bound", type=int, default=5 ** 6)
    p.add_argument("--out", help="JSON report path")
    p.set_defaults(func=cmd_ktheory)

    p = sub.add_parser("simplicity", help="arc-covering stage search")
    p.add_argument("--arc-length", required=True,
                   help="arc length as a fraction of the circle, e.g. 0.1 or 1/10")
    p.add_argument("--generator", default="1,0,3,5", help="k,proto,row,col")
    p.add_argument("--out", help="certificate JSON path")
    p.set_defaults(func=cmd_simplicity)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
