"""Command-line interface.

Every command writes sorted-key JSON (or SVG) to ``--out`` or stdout, so
reruns with the same arguments give identical bytes.  Exit codes: 0 on
success, 2 on invalid input, 3 on a mathematical failure (no match, no
supremum, not Cauchy) with the witness as JSON on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import AXIOM_LAWS, ORDER_LAWS, axiom_report, report_passed
from .errors import MathematicalFailure, NoMatch, ValidationError
from .field import Scalar, SqrtValue, Vector, format_scalar, parse_scalar
from .generators import preset
from .hull import eps_net, flc_check, orbit_sample, shift_grid
from .patterns import FinitePattern, GeneratedPattern
from .regions import Ball, parse_region
from .render import render_net, render_pattern
from .serialize import (
    decode_pattern,
    decode_vector,
    dumps,
    encode_pattern,
    encode_region,
    encode_sqrt,
    encode_vector,
    load_json,
    load_pattern,
    write_atomic,
)
from .spaces import space_by_name
from .topology import CauchySchedule, cauchy_limit, in_entourage, local_matching_distance


def _emit(args, text: str) -> None:
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _scalar_list(text: str):
    return [parse_scalar(t) for t in text.split(",") if t.strip()]


# -- commands -----------------------------------------------------------------------------------


def cmd_gen(args):
    P = preset(args.preset).pattern()
    if args.shift:
        P = P.act(decode_vector(args.shift, P.dim))
    if args.window:
        P = P.cut(parse_region(args.window))
    return dumps(encode_pattern(P))


def cmd_cut(args):
    P = load_pattern(args.pattern)
    return dumps(encode_pattern(P.cut(parse_region(args.region))))


def cmd_dist(args):
    P, Q = load_pattern(args.p), load_pattern(args.q)
    d = local_matching_distance(P, Q, parse_scalar(args.rmax))
    out = {"d": encode_sqrt(d.value)}
    out["certified_to"] = None if d.certified_to is None else format_scalar(d.certified_to)
    return dumps(out)


def cmd_entourage(args):
    P, Q = load_pattern(args.p), load_pattern(args.q)
    K, v = parse_region(args.K), parse_scalar(args.v)
    w = in_entourage(P, Q, K, v)
    if w is None:
        raise NoMatch(
            "no translation within v matches the patterns on K",
            witness={"K": encode_region(K), "v": format_scalar(v)},
        )
    return dumps({"member": True, "gamma": encode_vector(w.gamma), "norm": encode_sqrt(w.norm), "least": w.least})


def cmd_flc(args):
    P = load_pattern(args.pattern)
    R = parse_scalar(args.radius)
    windows = _scalar_list(args.windows)
    rep = flc_check(P, R, windows, mode=args.mode)
    atoms = []
    for W in windows:
        window = P.cut(Ball(Vector.zero(P.dim), W))
        atoms.append(len(window.atoms))
    return dumps(
        {
            "radius": format_scalar(rep.radius),
            "windows": [format_scalar(W) for W in rep.windows],
            "class_counts": rep.class_counts,
            "stabilized": rep.stabilized,
            "certified": rep.certified,
            "mode": rep.mode,
            # finitely many atoms per bounded window, the hypothesis of the converse
            "atoms_per_window": atoms,
        }
    )


def _parse_grid(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError("grid must be <start>:<step>:<count>")
    try:
        count = int(parts[2])
    except ValueError:
        raise ValidationError(f"bad grid count {parts[2]!r}") from None
    if count < 1:
        raise ValidationError("grid count must be positive")
    return shift_grid(parts[0], parts[1], count)


def cmd_hull_net(args):
    P = load_pattern(args.pattern)
    grid = _parse_grid(args.grid)
    sample = orbit_sample(P, grid, parse_scalar(args.rmax))
    net = eps_net(sample, parse_scalar(args.eps))
    if args.svg:
        write_atomic(args.svg, render_net(sample.shifts, net))
    return dumps(
        {
            "size": len(net),
            "centers": net.centers,
            "center_shifts": [encode_vector(sample.shifts[i]) for i in net.centers],
            "assignment": net.assignment,
            "covering_radius": encode_sqrt(net.radius),
            "eps": format_scalar(net.eps),
            "samples": len(sample),
        }
    )


def _runspec_patterns(spec: dict):
    if "patterns" in spec:
        return [decode_pattern(p) for p in spec["patterns"]]
    if "preset" in spec:
        base = preset(spec["preset"]).pattern()
    elif "base" in spec:
        base = decode_pattern(spec["base"])
    else:
        raise ValidationError("runspec needs 'patterns', 'preset' or 'base'")
    try:
        N = int(spec["N"])
    except (KeyError, TypeError, ValueError):
        raise ValidationError("runspec needs an integer N") from None
    shifts = spec.get("shifts", "dyadic")
    if shifts == "dyadic":
        # s_n = sum_{k >= n} 2^{-(k+2)} = 2^{-(n+1)}
        from fractions import Fraction

        vs = [Vector((Scalar(Fraction(1, 2 ** (n + 1))),) + (Scalar(0),) * (base.dim - 1)) for n in range(1, N + 1)]
    else:
        vs = [decode_vector(s, base.dim) for s in shifts]
        if len(vs) != N:
            raise ValidationError("runspec lists a number of shifts different from N")
    return [base.act(v) for v in vs]


def cmd_cauchy_limit(args):
    spec = load_json(args.runspec)
    if not isinstance(spec, dict):
        raise ValidationError("runspec must be a JSON object")
    patterns = _runspec_patterns(spec)
    run = cauchy_limit(patterns, CauchySchedule(len(patterns), patterns[0].dim))
    return dumps(
        {
            "N": len(patterns),
            "witnesses": [encode_vector(g) for g in run.witnesses],
            "xi": [encode_vector(x) for x in run.partial_products],
            "xi_norms": [encode_sqrt(_norm(x)) for x in run.partial_products],
            "limit": encode_pattern(run.limit),
            "checks": run.checks,
        }
    )


def _norm(v):
    return SqrtValue(v.norm2())


def cmd_axioms(args):
    space = space_by_name(args.space, args.dim)
    laws = {"axioms": list(AXIOM_LAWS), "order": list(ORDER_LAWS), "all": None}[args.laws]
    report = axiom_report(space, args.samples, args.seed, laws)
    return dumps(
        {"space": space.name, "seed": args.seed, "samples": args.samples, "laws": report, "passed": report_passed(report)}
    )


def cmd_render(args):
    P = load_pattern(args.pattern)
    if args.window:
        P = P.cut(parse_region(args.window))
    elif isinstance(P, GeneratedPattern):
        P = P.cut(Ball(Vector.zero(P.dim), Scalar(10)))
    if not isinstance(P, FinitePattern):
        raise ValidationError("nothing finite to render")
    svg = render_pattern(P)
    if args.svg:
        write_atomic(args.svg, svg)
        return None
    return svg


# -- parser ---------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result here (atomically) instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    p = argparse.ArgumentParser(prog="patternspace", description="Exact computations with abstract pattern spaces.")
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    s = sub.add_parser("gen", help="materialize a preset generator")
    s.add_argument("--preset", required=True, help="integers|fibonacci|fibonacci-tiling|fibonacci-word|shifted-rows|periodic:<basis>:<motif>|periodic-word:<w>")
    s.add_argument("--window", help="region literal, e.g. ball:0:5; omit for the infinite pattern")
    s.add_argument("--shift", help="translate by this vector first, e.g. 1/10")
    s.set_defaults(fn=cmd_gen)

    s = sub.add_parser("cut", help="cut a pattern by a region")
    s.add_argument("pattern")
    s.add_argument("--region", required=True)
    s.set_defaults(fn=cmd_cut)

    s = sub.add_parser("dist", help="local matching distance")
    s.add_argument("p")
    s.add_argument("q")
    s.add_argument("--rmax", required=True)
    s.set_defaults(fn=cmd_dist)

    s = sub.add_parser("entourage", help="test (P, Q) in U_{K,V} and report the least witness")
    s.add_argument("p")
    s.add_argument("q")
    s.add_argument("--K", required=True, help="bounded region literal")
    s.add_argument("--v", required=True, help="radius of the group neighbourhood")
    s.set_defaults(fn=cmd_entourage)

    s = sub.add_parser("flc", help="count translation classes of R-clusters")
    s.add_argument("pattern")
    s.add_argument("--radius", required=True)
    s.add_argument("--windows", required=True, help="comma-separated window radii")
    s.add_argument("--mode", default="auto", choices=["auto", "sweep", "anchored"])
    s.set_defaults(fn=cmd_flc)

    s = sub.add_parser("hull-net", help="epsilon-net of an orbit sample")
    s.add_argument("pattern")
    s.add_argument("--grid", required=True, help="<start>:<step>:<count>, vectors comma-separated")
    s.add_argument("--eps", required=True)
    s.add_argument("--rmax", required=True)
    s.add_argument("--svg", help="also write a net diagram here")
    s.set_defaults(fn=cmd_hull_net)

    s = sub.add_parser("cauchy-limit", help="glue the limit of a Cauchy run")
    s.add_argument("runspec")
    s.set_defaults(fn=cmd_cauchy_limit)

    s = sub.add_parser("axioms", help="randomized axiom and order-law report")
    s.add_argument("--space", required=True, help="pointset|lf|patch|labeled-patch|symbolic|comb|multi")
    s.add_argument("--dim", type=int, default=1)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--laws", default="all", choices=["axioms", "order", "all"])
    s.set_defaults(fn=cmd_axioms)

    s = sub.add_parser("render", help="SVG plot of a pattern")
    s.add_argument("pattern")
    s.add_argument("--window", help="region to cut to before plotting")
    s.add_argument("--svg", help="output SVG path (default: stdout)")
    s.set_defaults(fn=cmd_render)
    return p


def _fail(kind: str, message: str, witness=None) -> None:
    payload = {"error": kind, "message": message}
    if witness is not None:
        payload["witness"] = witness
    sys.stderr.write(json.dumps(payload, sort_keys=True, default=str) + "\n")


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.fn(args)
    except MathematicalFailure as exc:
        _fail(type(exc).__name__, str(exc), exc.witness)
        return 3
    except ValidationError as exc:
        _fail(type(exc).__name__, str(exc))
        return 2
    if text is not None:
        _emit(args, text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
