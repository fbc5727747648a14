"""Command-line front end.

    mapchains homology --space sphere:1 --degrees 0..3
    mapchains models --space sphere:1 --target nerve:2 --pmax 2 --qmax 3
    mapchains verify --space sphere:0 --target sphere:1

Spaces are given as ``builder[:args]`` or ``@path`` (interchange file).
Builders: ``point``, ``sphere:n``, ``delta:p``, ``circle3``, ``nerve:k``
(nerve of the cyclic group of order k).
``--format records`` prints one JSON object per line; every record carries
``"schema": "mapchains/1"``.  The enumeration budget may be overridden with
the ``MAPCHAINS_BUDGET`` environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional, Sequence

from . import simplicial as sset
from .chains import reduced_homology
from .exactlin import OutOfWindowError, is_prime
from .models import MappingModels, diagonal, verify_pair
from .simplicial import BudgetExceeded

SCHEMA = "mapchains/1"
DEFAULT_BUDGET = 200_000


class UsageError(ValueError):
    pass


def parse_space(text: str) -> sset.PointedSpace:
    """``builder[:args]`` or ``@path``."""
    if text.startswith("@"):
        return sset.from_file(text[1:])
    name, _, arg = text.partition(":")
    try:
        if name == "point":
            return sset.point()
        if name == "sphere":
            return sset.sphere_min(int(arg))
        if name == "delta":
            return sset.delta_plus(int(arg))
        if name == "circle3":
            return sset.circle_triangle()
        if name == "nerve":
            k = int(arg or 2)
            return sset.nerve(sset.cyclic_group(k), name=f"BZ{k}")
    except ValueError as exc:
        raise UsageError(f"bad space {text!r}: {exc}") from exc
    raise UsageError(f"unknown builder {name!r}")


def parse_degrees(text: str) -> List[int]:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise UsageError(f"bad degree range {text!r}; expected a..b") from None
    if b < a:
        raise UsageError(f"empty degree range {text!r}")
    return list(range(a, b + 1))


def _budget(value: Optional[int]) -> int:
    env = os.environ.get("MAPCHAINS_BUDGET")
    budget = int(env) if env else (value if value is not None else DEFAULT_BUDGET)
    if budget <= 0:
        raise UsageError("budget must be positive")
    return budget


class Emitter:
    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout

    def record(self, kind: str, **fields):
        if self.fmt == "records":
            rec = {"schema": SCHEMA, "kind": kind, **fields}
            self.out.write(json.dumps(rec, sort_keys=True, default=repr) + "\n")

    def text(self, line: str = ""):
        if self.fmt == "table":
            self.out.write(line + "\n")


# ----------------------------------------------------------------------
# commands


def cmd_homology(args, em: Emitter) -> int:
    z = parse_space(args.space)
    degrees = parse_degrees(args.degrees or "0..3")
    ranks = reduced_homology(z, degrees, args.prime)
    em.text(f"reduced homology of {z.name} over F_{args.prime}")
    em.text("degree  rank")
    for n in degrees:
        em.text(f"{n:>6}  {ranks[n]}")
        em.record("homology", space=z.name, prime=args.prime, degree=n, rank=ranks[n])
    return 0


def _rank_table(em: Emitter, title, ranks, P, Q):
    em.text(title)
    em.text("q\\p " + " ".join(f"{p:>8}" for p in range(P + 1)))
    for q in range(Q + 1):
        em.text(f"{q:>3} " + " ".join(f"{ranks[p, q]:>8}" for p in range(P + 1)))


def cmd_models(args, em: Emitter) -> int:
    x, y = parse_space(args.space), parse_space(args.target)
    P, Q, ell = args.pmax, args.qmax, args.prime
    budget = _budget(args.budget)
    degrees = parse_degrees(args.degrees or "0..1")
    m = MappingModels(x, y, ell, budget)
    status = 0

    for model, w in (("D", m.D), ("G", m.G)):
        too_big = [pq for pq in _window(P, Q) if w.size(*pq) > budget]
        if too_big:
            msg = f"bidegree {too_big[0]} has {w.size(*too_big[0])} basis elements, budget {budget}"
            em.record("error", component=f"{model}.ranks", message=msg)
            em.text(f"{model}: {msg}")
            status = 1
            continue
        ranks = {pq: w.rank(*pq) for pq in _window(P, Q)}
        _rank_table(em, f"{model} bidegree ranks ({y.name}^{x.name}, F_{ell})", ranks, P, Q)
        for (p, q), r in sorted(ranks.items()):
            em.record("bidegree_rank", model=model, p=p, q=q, rank=r)

    for model, w in (("D", m.D), ("G", m.G)):
        results = []
        for (pp, qq) in ((P, Q), (P + 1, Q + 1)):
            try:
                seg = diagonal(w, pp, qq, budget)
                hom = {n: seg.homology([n])[n] for n in degrees if -pp - 1 < n < qq + 1}
            except (BudgetExceeded, OutOfWindowError) as exc:
                em.record("error", component=f"{model}.homology", P=pp, Q=qq, message=str(exc))
                em.text(f"{model} homology at (P,Q)=({pp},{qq}): {exc}")
                status = 1
                results.append(None)
                continue
            results.append(hom)
            for n, r in sorted(hom.items()):
                em.record("homology", model=model, P=pp, Q=qq, degree=n, rank=r)
            em.text(f"{model} homology at (P,Q)=({pp},{qq}): " +
                    ", ".join(f"H{n}={r}" for n, r in sorted(hom.items())))
        stable = results[0] is not None and results[0] == results[1]
        em.record("stabilization", model=model, windows=[[P, Q], [P + 1, Q + 1]], stable=stable,
                  value=results[1] if stable else None)
        em.text(f"{model} stable between ({P},{Q}) and ({P + 1},{Q + 1}): {'yes' if stable else 'no'}")
        status |= not stable

    try:
        top = max(degrees) + 1
        mdeg = [n for n in degrees if n >= 0]
        if mdeg:
            hom = reduced_homology(m.maps, mdeg, ell)
            for n, r in sorted(hom.items()):
                em.record("mapspace_homology", degree=n, rank=r)
            em.text(f"direct {m.maps.name} homology (enumerated to degree {top}): " +
                    ", ".join(f"H{n}={r}" for n, r in sorted(hom.items())))
    except BudgetExceeded as exc:
        em.record("error", component="mapspace", message=str(exc))
        em.text(f"map space: {exc}")
        status = 1
    return int(status)


def _window(P, Q):
    return [(p, q) for p in range(P + 1) for q in range(Q + 1)]


def cmd_verify(args, em: Emitter) -> int:
    x, y = parse_space(args.space), parse_space(args.target)
    degrees = parse_degrees(args.degrees or "0..1")
    results = verify_pair(x, y, args.prime, args.pmax, args.qmax, args.smax, degrees, _budget(args.budget))
    status = 0
    em.text(f"verification for {y.name}^{x.name} over F_{args.prime}, window ({args.pmax},{args.qmax})")
    for r in results:
        ok = r["passed"]
        status |= not ok
        em.record("suite", **r)
        line = f"{'PASS' if ok else 'FAIL'}  {r['suite']}"
        if not ok:
            line += f"  {r.get('error') or r['counterexamples'][:1]}"
        em.text(line)
    return int(status)


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mapchains", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, pair):
        p.add_argument("--prime", type=int, default=2)
        if pair:
            p.add_argument("--space", default="sphere:1", help="builder[:args] or @file (default sphere:1)")
            p.add_argument("--target", default="nerve:2", help="builder[:args] or @file (default nerve:2)")
            p.add_argument("--pmax", type=int, default=3)
            p.add_argument("--qmax", type=int, default=3)
            p.add_argument("--smax", type=int, default=3)
            p.add_argument("--budget", type=int, default=None)
        else:
            p.add_argument("--space", required=True, help="builder[:args] or @file")
        p.add_argument("--degrees", default=None, help="a..b")
        p.add_argument("--format", choices=("table", "records"), default="table")

    common(sub.add_parser("homology", help="reduced homology ranks of one space"), False)
    common(sub.add_parser("models", help="rank tables and homology of the D and G models"), True)
    common(sub.add_parser("verify", help="run the identity suites for a pair of spaces"), True)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    em = Emitter(args.format)
    try:
        if not is_prime(args.prime):
            raise UsageError(f"{args.prime} is not prime")
        for name in ("pmax", "qmax", "smax"):
            if getattr(args, name, 0) < 0:
                raise UsageError(f"--{name} must be nonnegative")
        cmd = {"homology": cmd_homology, "models": cmd_models, "verify": cmd_verify}[args.command]
        return cmd(args, em)
    except (UsageError, sset.BudgetExceeded, OutOfWindowError, OSError) as exc:
        em.record("error", component=args.command, message=str(exc))
        print(f"mapchains: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
