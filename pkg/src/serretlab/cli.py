"""Command line front end.

Subcommands: validate, analyze, graph, schreier, transducer, expand,
convert, serret, sync, accelerate, census.  Spec arguments are JSON files
(or the name of a bundled spec); `convert` also reads stdin.  Exit codes:
0 success, 2 invalid spec, 3 undecided verdict under --strict, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import mobius_apply
from .algorithm import AlgorithmError, SlowAlgorithm, Window, validate
from .exact import QuadIrr, parse_value
from .expansion import OrbitStatus, census, orbit, sigma_equivalent
from .graph import build_graph, export_dot, fingerprint, schreier_quotient
from .presets import BUNDLED, bundled_spec
from .transducer import (build_ft, defect, gt_transducer, root_component,
                         serret_check, sync_check, sync_sample)

USAGE_ERROR = 64
SPEC_ERROR = 2
UNDECIDED_ERROR = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _load(spec_arg: str) -> SlowAlgorithm:
    if spec_arg in BUNDLED:
        return validate(bundled_spec(spec_arg))
    with open(spec_arg) as fh:
        return validate(json.load(fh))


def _emit(args, data: dict, text_lines):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _write_dot(args, dot_text: str):
    if args.dot:
        if args.dot == "-":
            sys.stdout.write(dot_text)
        else:
            with open(args.dot, "w") as fh:
                fh.write(dot_text)


def cmd_validate(args) -> int:
    T = _load(args.spec)
    data = {
        "branches": [T.branch_word(a) for a in range(T.n)],
        "partition": T.to_partition(),
        "n": T.n,
    }
    _emit(args, data, [
        f"valid slow algorithm with {T.n} branches",
        *(f"  {a}: {T.branch_word(a):10s} cell {T.intervals[a]}"
          f"  {'increasing' if T.es[a] == 0 else 'decreasing'}"
          for a in range(T.n)),
    ])
    return 0


def cmd_analyze(args) -> int:
    T = _load(args.spec)
    g = build_graph(T)
    quotient, phi = schreier_quotient(g)
    fp = fingerprint(T, quotient)
    d = defect(T, g, phi)
    verdict = serret_check(T, bound=args.bound, seed=args.seed,
                           walk_budget=args.walk_budget)
    sync = sync_check(root_component(gt_transducer(g)))
    data = {
        "fingerprint": fp.to_json(),
        "defect": d.value,
        "root_fiber": list(phi.root_fiber),
        "serret": verdict.to_json(),
        "sync": sync.to_json(),
    }
    lines = [
        f"index [Pi : Sigma_T] = {fp.index}",
        f"inside the orientation-preserving half: {fp.in_gamma}"
        + (f" (class {fp.parity_class})" if fp.parity_class else ""),
        f"contains SRS: {fp.has_srs}, SRSF: {fp.has_srsf}, SR2SF: {fp.has_sr2sf}",
        f"defect = {d.value}  (root fiber size {len(phi.root_fiber)})",
        f"tail property: {verdict.status}"
        + (f" ({verdict.certificate} certificate)" if verdict.certificate else ""),
    ]
    if verdict.witness:
        w = verdict.witness
        lines.append(f"  witness: alpha = {w.alpha}, beta = {w.beta} = {w.state} * alpha,"
                     f" orbits {w.orbit_alpha} vs {w.orbit_beta}")
    lines.append(
        "synchronizing word: "
        + ("".join(str(z) for z in sync.word) if sync.synchronizing and sync.word
           else ("(empty)" if sync.synchronizing else "none exists"))
        + f"  [{sync.states} states, pair graph {sync.pair_graph_size}]")
    _emit(args, data, lines)
    if args.strict and verdict.status == "undecided":
        return UNDECIDED_ERROR
    return 0


def cmd_graph(args) -> int:
    T = _load(args.spec)
    g = build_graph(T)
    _write_dot(args, export_dot(g))
    _emit(args, g.to_json(), [
        f"{len(g.vertices)} vertices: {', '.join(g.vertices)}",
        *(f"  {v}: " + "  ".join(f"--{Z}--> {g.target(v, Z)}" for Z in ("L", "N", "F"))
          for v in g.vertices),
    ])
    return 0


def cmd_schreier(args) -> int:
    T = _load(args.spec)
    g = build_graph(T)
    quotient, phi = schreier_quotient(g)
    _write_dot(args, export_dot(quotient))
    _emit(args, phi.to_json(), [
        f"index {quotient.index}; root fiber {', '.join(phi.root_fiber)}",
        *(f"  {Z}: {quotient.perms[Z]}" for Z in ("L", "N", "F")),
    ])
    return 0


def cmd_transducer(args) -> int:
    T = _load(args.spec)
    g = build_graph(T)
    if args.which == "gt":
        t = gt_transducer(g)
    else:
        _, phi = schreier_quotient(g)
        ft, ft_star = build_ft(T, g, phi)
        t = ft if args.which == "ft" else ft_star
    data = t.to_json()
    lines = [f"{args.which}: {len(t.states)} states, input alphabet "
             + " ".join(str(z) for z in t.input_alphabet)]
    for e in data["edges"]:
        lines.append(f"  {e['from']} --{e['in']}|{e['out']}--> {e['to']}")
    _emit(args, data, lines)
    return 0


def cmd_expand(args) -> int:
    T = _load(args.spec)
    x = parse_value(args.value)
    res = orbit(T, x, max_steps=args.max_steps)
    data = {"value": args.value, "orbit": str(res.word),
            "status": res.status.value}
    _emit(args, data, [str(res.word) if res.status == OrbitStatus.PERIODIC
                       else str(res)])
    return 0


def cmd_convert(args) -> int:
    if args.spec == "-":
        T = validate(json.load(sys.stdin))
    else:
        T = _load(args.spec)
    data = T.to_json() if args.to == "branches" else {"partition": T.to_partition()}
    print(json.dumps(data, indent=2, sort_keys=True))
    return 0


def cmd_serret(args) -> int:
    T = _load(args.spec)
    verdict = serret_check(T, bound=args.bound, seed=args.seed,
                           walk_budget=args.walk_budget)
    lines = [f"tail property: {verdict.status}"
             + (f" ({verdict.certificate} certificate)" if verdict.certificate else "")]
    if verdict.witness:
        w = verdict.witness
        lines += [
            f"  state {w.state} = {w.state_matrix}, cycle {list(w.input_cycle)} | {list(w.output_cycle)}",
            f"  alpha = {w.alpha} with orbit {w.orbit_alpha}",
            f"  beta  = {w.beta} with orbit {w.orbit_beta}",
        ]
    if verdict.sampling:
        lines.append(f"  sampling: {verdict.sampling}")
    _emit(args, verdict.to_json(), lines)
    if args.strict and verdict.status == "undecided":
        return UNDECIDED_ERROR
    return 0


def cmd_sync(args) -> int:
    T = _load(args.spec)
    t = root_component(gt_transducer(build_graph(T)))
    result = sync_check(t)
    data = result.to_json()
    lines = [
        ("synchronizing word: " + "".join(str(z) for z in result.word))
        if result.synchronizing else "not synchronizing",
        f"  {result.states} states, pair graph {result.pair_graph_size} vertices",
    ]
    if args.sample:
        report = sync_sample(t, args.sample, args.sample_length, seed=args.seed)
        data["sampling"] = report
        lines.append(
            f"  sampling {report['words']} words of length {report['length']}: "
            f"{report['avoided_reset']} avoided every reset "
            f"(fraction {report['fraction']})")
    _emit(args, data, lines)
    return 0


def cmd_accelerate(args) -> int:
    T = _load(args.spec)
    window = Window.parse(args.window)
    mats = T.accel_branches(window, args.depth)
    data = {"window": [window.i, window.j],
            "open_left": window.open_left, "open_right": window.open_right,
            "depth": args.depth,
            "branches": [m.rows() for m in mats]}
    _emit(args, data, [f"{len(mats)} accelerated branches up to depth {args.depth}:",
                       *(f"  {m}" for m in mats)])
    return 0


def cmd_census(args) -> int:
    T = _load(args.spec)
    x = parse_value(args.value)
    if not isinstance(x, QuadIrr):
        raise AlgorithmError("census needs a quadratic irrational value")
    report = census(T, x, args.radius)
    d = defect(T)
    data = {"radius": report.radius, "points": report.points,
            "classes": report.classes, "class_sizes": list(report.class_sizes),
            "defect": d.value}
    _emit(args, data, [
        f"{report.points} points in the radius-{report.radius} orbit of {x}",
        f"tail classes: {report.classes} (defect bound {d.value})",
        f"class sizes: {', '.join(map(str, report.class_sizes))}",
    ])
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="serret-lab",
                     description="exact analysis of slow continued fraction algorithms")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="machine readable output")
        return p

    def add_spec(p, stdin=False):
        help_text = "spec file (JSON) or bundled name: " + ", ".join(BUNDLED)
        if stdin:
            p.add_argument("spec", nargs="?", default="-",
                           help=help_text + "; '-' reads stdin")
        else:
            p.add_argument("spec", help=help_text)

    p = add("validate", cmd_validate, help="check a spec and print its partition")
    add_spec(p)

    p = add("analyze", cmd_analyze, help="index, fingerprint, defect, tail property, sync")
    add_spec(p)
    p.add_argument("--bound", type=int, default=None, help="closed-walk search bound")
    p.add_argument("--walk-budget", type=int, default=200_000,
                   help="search effort before giving an undecided verdict")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict", action="store_true",
                   help="exit 3 when the tail verdict is undecided")

    p = add("graph", cmd_graph, help="the algorithm graph")
    add_spec(p)
    p.add_argument("--dot", metavar="FILE", help="write DOT ('-' for stdout)")

    p = add("schreier", cmd_schreier, help="Schreier quotient and fiber map")
    add_spec(p)
    p.add_argument("--dot", metavar="FILE", help="write DOT ('-' for stdout)")

    p = add("transducer", cmd_transducer, help="canonical or commutator transducer")
    add_spec(p)
    p.add_argument("--which", choices=("gt", "ft", "ftstar"), default="gt")

    p = add("expand", cmd_expand, help="symbolic orbit of an exact value")
    add_spec(p)
    p.add_argument("--value", required=True,
                   help="exact value, e.g. '2/5' or 'sqrt(3)+1'")
    p.add_argument("--max-steps", type=int, default=100_000)

    p = add("convert", cmd_convert, help="normalize a spec (branches or partition form)")
    add_spec(p, stdin=True)
    p.add_argument("--to", choices=("branches", "partition"), default="branches")

    p = add("serret", cmd_serret, help="decide or refute the tail property")
    add_spec(p)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--walk-budget", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict", action="store_true")

    p = add("sync", cmd_sync, help="synchronizing word of the root component")
    add_spec(p)
    p.add_argument("--sample", type=int, default=0, metavar="N",
                   help="also sample N random inputs")
    p.add_argument("--sample-length", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)

    p = add("accelerate", cmd_accelerate, help="inverse branches of a first-return map")
    add_spec(p)
    p.add_argument("--window", required=True,
                   help="i,j[,open_left][,open_right]")
    p.add_argument("--depth", type=int, required=True)

    p = add("census", cmd_census, help="tail classes in a group ball around a value")
    add_spec(p)
    p.add_argument("--value", required=True)
    p.add_argument("--radius", type=int, required=True)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_ERROR
    try:
        return args.fn(args)
    except AlgorithmError as exc:
        print(f"invalid algorithm: {type(exc).__name__}: {exc}", file=sys.stderr)
        return SPEC_ERROR
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return SPEC_ERROR


if __name__ == "__main__":
    sys.exit(main())
