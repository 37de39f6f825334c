"""Command-line interface.

Exit codes: 0 success, 1 a "no" or "undetermined" verdict, 2 bad input.
"""

from __future__ import annotations

import argparse
import os
import sys

from .corpus import EXAMPLES, example
from .gm import GmObstruction
from .io import (
    DocumentError,
    PairDocument,
    configuration_document,
    dumps,
    load_configuration,
    load_map,
    load_period,
    read_json,
)
from .lattice import LatticeError
from .pair import PairError, defining_configuration, interior_euler
from .period import BoundaryMarking, PeriodError, marked_period, mutate, reconstruct, unmarked_period
from .roots import RootError, default_bound, find_roots
from .toric import Fan2D, FanError
from .torelli import TorelliError, check_global_torelli, mw_rank, torsor_group, weak_torelli

INPUT_ERRORS = (
    DocumentError,
    PairError,
    PeriodError,
    FanError,
    LatticeError,
    RootError,
    TorelliError,
    GmObstruction,
    OSError,
    KeyError,
)


class UsageError(Exception):
    pass


def _bound(args, pair):
    if args.bound is not None:
        return args.bound
    env = os.environ.get("LOOIJENGA_BOUND")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"LOOIJENGA_BOUND must be an integer, got {env!r}") from None
    return default_bound(pair)


def _genericity(p, rd) -> str:
    if rd.phiY:
        return "no"
    if p.is_fresh_generic():
        return "yes"
    from .period import unmarked_period as up

    phi = up(p)
    if any(phi(a).is_one() for a in rd.undetermined):
        return "undetermined"
    return "yes" if rd.complete else "undetermined"


def cmd_analyze(args) -> int:
    doc = PairDocument.load(args.file)
    p = doc.pair
    B = _bound(args, p)
    rd = find_roots(p, B)
    L = p.pic
    report = {
        "name": doc.name,
        "n": p.n,
        "rank": p.rank,
        "boundary_self_intersections": list(p.boundary_squares()),
        "K2": L.square(p.canonical),
        "interior_euler": interior_euler(p),
        "bound": B,
        "roots": len(rd.roots),
        "roots_certified": len(rd.certified),
        "roots_undetermined": len(rd.undetermined),
        "roots_complete": rd.complete,
        "phi_Y": len(rd.phiY),
        "delta_Y": len(rd.deltaY),
        "generic": _genericity(p, rd),
        "torsor_invariant_factors": list(torsor_group(p)),
        "ample": list(rd.ample0),
    }
    D = tuple(-k for k in p.canonical)
    report["mw_rank"] = mw_rank(p) if L.square(D) == 0 else None
    sys.stdout.write(dumps(report))
    return 0


def cmd_roots(args) -> int:
    doc = PairDocument.load(args.file)
    B = _bound(args, doc.pair)
    rd = find_roots(doc.pair, B)
    sys.stdout.write(dumps(rd.to_json()))
    return 0


def cmd_period(args) -> int:
    doc = PairDocument.load(args.file)
    p = doc.pair
    marking = doc.marking or BoundaryMarking.canonical(p.n)
    out = {
        "marking": marking.to_json(),
        "marked": marked_period(p, marking).to_json(),
        "unmarked": unmarked_period(p).to_json(),
    }
    sys.stdout.write(dumps(out))
    return 0


def cmd_reconstruct(args) -> int:
    fdata = read_json(args.fan)
    fan = Fan2D.from_json(fdata["fan"] if isinstance(fdata, dict) else fdata)
    config, lattice, boundary = load_configuration(args.config)
    if lattice is None or boundary is None:
        raise DocumentError("the configuration file must carry 'gram' and 'boundary'")
    phi = load_period(args.phi, lattice)
    res = reconstruct(fan, config, phi, boundary)
    out = PairDocument(res.pair, res.marking).to_json()
    out_map = {"lattice_map": [list(r) for r in res.lattice_map.matrix]}
    sys.stdout.write(dumps({"pair": out, **out_map}))
    return 0


def cmd_torelli(args) -> int:
    a = PairDocument.load(args.a).pair
    b = PairDocument.load(args.b).pair
    if a.rank != b.rank:
        raise DocumentError(f"lattice ranks differ: {a.rank} vs {b.rank}")
    mu = load_map(args.map, a.pic, b.pic)
    bound = args.bound
    if bound is None and os.environ.get("LOOIJENGA_BOUND"):
        bound = _bound(args, a)
    if args.weak:
        res = weak_torelli(a, b, mu, bound)
        sys.stdout.write(dumps(res.to_json()))
        return 0 if res.verdict is not None and res.verdict.verdict == "yes" else 1
    v = check_global_torelli(a, b, mu, bound)
    sys.stdout.write(dumps(v.to_json()))
    return 0 if v.verdict == "yes" else 1


def cmd_mutate(args) -> int:
    doc = PairDocument.load(args.file)
    p = doc.pair
    config, _, _ = load_configuration(args.config, p.pic)
    res = mutate(p, config, doc.marking)
    out = PairDocument(res.pair, res.marking, doc.name)
    sys.stdout.write(out.dumps())
    if args.map_out:
        with open(args.map_out, "w") as fh:
            fh.write(dumps({"matrix": [list(r) for r in res.lattice_map.matrix]}))
    return 0


def cmd_examples(args) -> int:
    if args.name is None:
        sys.stdout.write(dumps(sorted(EXAMPLES)))
        return 0
    if args.name not in EXAMPLES:
        raise UsageError(f"unknown example {args.name!r}; available: {', '.join(sorted(EXAMPLES))}")
    p = example(args.name)
    if args.config:
        c = defining_configuration(p)
        sys.stdout.write(dumps(configuration_document(c, p.pic, p.boundary)))
        return 0
    sys.stdout.write(PairDocument(p, None, args.name).dumps())
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="looijenga", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", help="summary report for a pair document")
    s.add_argument("file")
    s.add_argument("--bound", type=int)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("roots", help="bounded root fragment with Phi_Y and Delta_Y")
    s.add_argument("file")
    s.add_argument("--bound", type=int)
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("period", help="marked and unmarked period points")
    s.add_argument("file")
    s.set_defaults(func=cmd_period)

    s = sub.add_parser("reconstruct", help="rebuild a pair from a period point")
    s.add_argument("--fan", required=True)
    s.add_argument("--config", required=True)
    s.add_argument("--phi", required=True)
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("torelli", help="decide the Torelli conditions for a lattice map")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--map", required=True)
    s.add_argument("--weak", action="store_true")
    s.add_argument("--bound", type=int)
    s.set_defaults(func=cmd_torelli)

    s = sub.add_parser("mutate", help="change the toric model via the period point")
    s.add_argument("file")
    s.add_argument("--config", required=True)
    s.add_argument("--map-out", help="write the lattice map new Pic -> old Pic here")
    s.set_defaults(func=cmd_mutate)

    s = sub.add_parser("examples", help="print a built-in example document")
    s.add_argument("name", nargs="?")
    s.add_argument("--config", action="store_true", help="print its defining configuration instead")
    s.set_defaults(func=cmd_examples)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
