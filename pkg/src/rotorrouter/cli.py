"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import algebra, divisors, rotor, verify
from .graph import (
    FIXTURES,
    GraphError,
    bidirected,
    directed_cycle,
    random_digraph,
    read_digraph,
    serialize_digraph,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _ints(xs) -> list[str]:
    return [str(x) for x in xs]


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _state_from_args(D, args) -> rotor.ChipRotorState:
    s = rotor.ChipRotorState(args.chip, rotor.parse_rotors(args.rotors))
    rotor.check_state(D, s)
    return s


def cmd_invariants(args) -> int:
    D = read_digraph(args.graph)
    per = algebra.period_vector(D)
    pic = algebra.picard_summary(D)
    out = {
        "n": str(D.n),
        "m": str(D.m),
        "per": _ints(per),
        "arborescences": _ints(algebra.arborescence_counts(D)),
        "pham_index": str(algebra.pham_index(D)),
        "picard_invariant_factors": _ints(pic.invariant_factors),
        "picard_order": str(pic.order),
        "orbit_length": str(sum(p * D.outdeg(v) for v, p in enumerate(per))),
        "orbit_count": str(pic.order),
    }
    print(_dump(out))
    return EXIT_OK


def cmd_simulate(args) -> int:
    D = read_digraph(args.graph)
    s = _state_from_args(D, args)
    if args.until_return and not rotor.is_unicycle(D, s):
        raise InputError(
            f"{s} is not a unicycle; recurrent states are exactly the unicycles, "
            "so it never returns"
        )
    print(f"0 {s.chip} {rotor.format_rotors(s.rotors)}")
    cur = s
    t = 0
    while True:
        if args.steps is not None and t >= args.steps:
            break
        cur = rotor.step(D, cur)
        t += 1
        print(f"{t} {cur.chip} {rotor.format_rotors(cur.rotors)}")
        if args.until_return and cur == s:
            break
    if args.until_return:
        summ = rotor.run_period(D, s)
        print(f"length {summ.length}")
        print("visits " + " ".join(_ints(summ.visits)))
        print("turns " + " ".join(_ints(summ.turns)))
        print("edge_flow " + " ".join(f"{u},{k}:{c}" for (u, k), c in sorted(summ.edge_flow.items())))
    if args.dot:
        sys.stdout.write(rotor.to_dot(D, cur))
    return EXIT_OK


def cmd_orbits(args) -> int:
    D = read_digraph(args.graph)
    orbits = rotor.orbit_partition(D, args.cap)
    for i, orbit in enumerate(orbits):
        print(f"orbit {i} size {len(orbit)} rep {orbit[0]}")
    counts = algebra.arborescence_counts(D)
    per = algebra.period_vector(D)
    ratios = [t // p if t % p == 0 else None for t, p in zip(counts, per)]
    ok = all(r == len(orbits) for r in ratios)
    print(f"orbit count {len(orbits)}")
    print(
        "T(D,w)/per(w) "
        + " ".join(f"{t}/{p}" for t, p in zip(counts, per))
        + (" consistent" if ok else " MISMATCH")
    )
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    instances: list[tuple[str, object]] = []
    for path in args.graphs:
        instances.append((path, read_digraph(path)))
    if args.fixtures:
        instances += list(FIXTURES.items())
    if args.random:
        max_n, count, seed = args.random
        if max_n < 2:
            raise InputError("--random needs n >= 2")
        instances += list(verify.random_corpus(count, seed, max_n=max_n))
    if not instances:
        raise InputError("nothing to verify: give graph files, --fixtures or --random")
    reports = []
    for gid, D in instances:
        reports += verify.run_all(D, gid, cap=args.cap)
    failed = [r for r in reports if not r.passed]
    if args.json:
        summary = {
            "checks": [r.as_dict() for r in reports],
            "failed": str(len(failed)),
            "passed": str(len(reports) - len(failed)),
            "random_seed": str(args.random[2]) if args.random else None,
        }
        print(_dump(summary))
    else:
        if args.random:
            print(f"# random corpus seed {args.random[2]}")
        for r in reports:
            print(r.line())
        for r in failed:
            if r.instance:
                print(f"# replay {r.check} {r.graph_id}:")
                print("".join(f"#   {ln}\n" for ln in r.instance.splitlines()), end="")
        print(f"# {len(reports) - len(failed)} passed, {len(failed)} failed")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_divisor(args) -> int:
    D = read_digraph(args.graph)
    x = divisors.parse_divisor(args.divisor, D.n)
    out: dict = {"divisor": _ints(x)}
    if args.reduced:
        if args.root is None:
            raise InputError("--reduced needs --root")
        if not 0 <= args.root < D.n:
            raise InputError(f"root {args.root} is not a vertex")
        out["root"] = str(args.root)
        out["reduced"] = divisors.is_w_reduced(D, x, args.root)
    elif args.canonical:
        out["canonical"] = _ints(divisors.canonical_form(D, x))
        out["picard_invariant_factors"] = _ints(algebra.picard_summary(D).invariant_factors)
    else:
        y = divisors.parse_divisor(args.equiv, D.n)
        ok, z = divisors.equivalent(D, x, y)
        out["other"] = _ints(y)
        out["equivalent"] = ok
        out["witness"] = _ints(z) if ok else None
    print(_dump(out))
    return EXIT_OK


def _parse_edge_list(text: str) -> list[tuple[int, int]]:
    edges = []
    for tok in text.replace(",", " ").split():
        try:
            a, b = tok.split("-")
            edges.append((int(a), int(b)))
        except ValueError:
            raise InputError(f"bad edge {tok!r}; expected u-v") from None
    return edges


def cmd_gen(args) -> int:
    comment = None
    if args.kind == "fixture":
        if len(args.params) != 1 or args.params[0] not in FIXTURES:
            raise InputError(f"fixture name must be one of {', '.join(FIXTURES)}")
        D = FIXTURES[args.params[0]]
        comment = f"fixture {args.params[0]}"
    elif args.kind == "cycle":
        D = directed_cycle(_int_params(args.params, 1)[0])
    elif args.kind == "bidirected":
        D = bidirected(_parse_edge_list(" ".join(args.params)))
    else:
        n, extra, seed = _int_params(args.params, 3)
        D = random_digraph(n, extra, seed)
        comment = f"random n={n} extra_edges={extra} seed={seed}"
    text = serialize_digraph(D, comment)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _int_params(params: Sequence[str], k: int) -> list[int]:
    if len(params) != k:
        raise InputError(f"expected {k} integer parameter(s), got {len(params)}")
    try:
        return [int(p) for p in params]
    except ValueError:
        raise InputError(f"expected integers, got {' '.join(params)}") from None


def cmd_dot(args) -> int:
    D = read_digraph(args.graph)
    sys.stdout.write(rotor.to_dot(D, _state_from_args(D, args)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=rotor.DEFAULT_CAP,
                        help="maximum number of chip-and-rotor states to enumerate")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="rotorrouter", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("invariants", parents=[common], help="period vector, counts, Picard group")
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("simulate", parents=[common], help="run the rotor-router walk")
    sp.add_argument("graph")
    sp.add_argument("--chip", type=int, required=True)
    sp.add_argument("--rotors", required=True, help="comma-separated rotor indices")
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--steps", type=int)
    mode.add_argument("--until-return", action="store_true")
    sp.add_argument("--dot", action="store_true", help="append DOT of the final state")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("orbits", parents=[common], help="list unicycle orbits")
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_orbits)

    sp = sub.add_parser("verify", parents=[common], help="run all theorem checks")
    sp.add_argument("graphs", nargs="*")
    sp.add_argument("--fixtures", action="store_true", help="include built-in G1..G4")
    sp.add_argument("--random", nargs=3, type=int, metavar=("N", "COUNT", "SEED"),
                    help="COUNT random digraphs with 2..N vertices from SEED")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("divisor", parents=[common], help="reduced test, class label, equivalence")
    sp.add_argument("graph")
    sp.add_argument("--divisor", required=True, help='space-separated, e.g. "1 -1 0"')
    sp.add_argument("--root", type=int)
    what = sp.add_mutually_exclusive_group(required=True)
    what.add_argument("--reduced", action="store_true")
    what.add_argument("--canonical", action="store_true")
    what.add_argument("--equiv", metavar="DIVISOR")
    sp.set_defaults(func=cmd_divisor)

    sp = sub.add_parser("gen", parents=[common], help="write a graph file")
    sp.add_argument("kind", choices=["fixture", "cycle", "bidirected", "random"])
    sp.add_argument("params", nargs="*",
                    help="fixture NAME | cycle N | bidirected 'u-v ...' | random N EXTRA SEED")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("dot", parents=[common], help="DOT export of a chip-and-rotor state")
    sp.add_argument("graph")
    sp.add_argument("--chip", type=int, required=True)
    sp.add_argument("--rotors", required=True)
    sp.set_defaults(func=cmd_dot)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (GraphError, InputError, rotor.StateSpaceTooLarge, OSError, ValueError) as exc:
        print(f"rotorrouter {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
