"""Command-line entry point: ``avalanche <subcommand> ...``.

Exit status: 0 on success, 1 when a computation fails (limits, validation),
2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import families, parking
from .engine import (default_limit, enumerate_recurrents, format_sandpile, parse_sandpile,
                     state_count)
from .errors import AvalancheError, GraphError
from .graph import (complete_graph, cycle_graph, fan_graph, grid_graph, invariant_factors,
                    load_graph, path_graph, reduced_laplacian, spanning_tree_count, tree_graph,
                    wheel_graph)
from .poly import MultiPoly, UniPoly, burst_specialize, univariate
from .principal import (PRNG_NAME, avalanche_polynomial, avalanche_records, grid_experiment,
                        powerlaw_slope, tree_avalanche_polynomial)
from .reconstruct import reconstruct_tree


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.replace(" ", "").split(",") if t]


# -- graph selection ---------------------------------------------------------

KINDS = ("path", "cycle", "complete", "wheel", "fan", "grid", "tree")


def add_graph_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="graph JSON file")
    src.add_argument("--kind", choices=KINDS, help="built-in family")
    p.add_argument("--n", type=int, help="family size (vertices; rim size for wheel; path length for fan)")
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--parents", help="tree parent list for vertices 1.., root 0, e.g. 0,0,1")


def graph_from_args(args):
    if args.graph:
        return load_graph(args.graph)
    kind = args.kind
    if kind == "grid":
        if args.rows is None or args.cols is None:
            raise GraphError("grid needs --rows and --cols")
        return grid_graph(args.rows, args.cols)
    if kind == "tree":
        if args.parents is None:
            raise GraphError("tree needs --parents")
        return tree_graph(_ints(args.parents))
    if args.n is None:
        raise GraphError(f"{kind} needs --n")
    build = {"path": path_graph, "cycle": cycle_graph, "complete": complete_graph,
             "wheel": wheel_graph, "fan": fan_graph}[kind]
    return build(args.n)


def add_limit_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--limit", type=int, default=None,
                   help="maximum stable states to scan (default 1e8, or AVALANCHE_LIMIT)")
    p.add_argument("--threads", type=int, default=1, help="worker processes for the scan")


def _limit(args) -> int:
    limit = default_limit() if args.limit is None else args.limit
    if limit <= 0:
        raise GraphError("--limit must be positive")
    return limit


def _poly(g, args) -> MultiPoly:
    return avalanche_polynomial(g, _limit(args), workers=args.threads)


def emit_poly(p: MultiPoly, names, fmt: str, out) -> None:
    if fmt == "text":
        print(p.to_text(names), file=out)
    else:
        print(dumps(p.to_json()), file=out)


def emit_uni(u: UniPoly, fmt: str, out) -> None:
    if fmt == "text":
        print(u.to_text(), file=out)
    else:
        print(dumps(u.as_dict()), file=out)


# -- subcommands -------------------------------------------------------------

def cmd_poly(args, out):
    g = graph_from_args(args)
    if args.records:
        with open(args.records, "w") as fh:
            for rec in avalanche_records(g, _limit(args)):
                fh.write(dumps(rec.to_json()) + "\n")
    p = _poly(g, args)
    if args.univariate:
        emit_uni(univariate(p), args.format, out)
    elif args.burst:
        emit_uni(burst_specialize(p, g), args.format, out)
    else:
        emit_poly(p, g.var_names, args.format, out)


def cmd_dist(args, out):
    g = graph_from_args(args)
    emit_uni(univariate(_poly(g, args)), args.format, out)


def cmd_burst(args, out):
    g = graph_from_args(args)
    emit_uni(burst_specialize(_poly(g, args), g), args.format, out)


def cmd_recurrents(args, out):
    g = graph_from_args(args)
    recs = enumerate_recurrents(g, _limit(args))
    if args.count:
        n = sum(1 for _ in recs)
        if args.format == "text":
            print(n, file=out)
        else:
            print(dumps({"recurrents": n, "spanning_trees": spanning_tree_count(g),
                         "states_scanned": state_count(g)}), file=out)
        return
    for c in recs:
        print(format_sandpile(c) if args.format == "text" else dumps(list(c)), file=out)


def family_poly(kind: str, n: int | None, parents: str | None):
    if kind == "tree":
        if parents is None:
            raise GraphError("tree needs --parents")
        t = families.RootedTree.from_parents(_ints(parents))
        return families.tree_poly(t), t.to_graph().var_names
    if n is None:
        raise GraphError(f"{kind} needs --n")
    if kind == "cycle":
        return families.cycle_poly(n), cycle_graph(n).var_names
    if kind == "complete":
        return families.complete_poly(n), complete_graph(n).var_names
    return families.wheel_poly(n), wheel_graph(n).var_names


def cmd_family(args, out):
    p, names = family_poly(args.kind, args.n, args.parents)
    emit_poly(p, names, args.format, out)


def verify_family(kind: str, n: int, limit: int, workers: int = 1) -> tuple[bool, str]:
    """Compare the closed form for one family member against simulation."""
    if kind == "tree":
        bad = 0
        total = 0
        for t in families.all_rooted_trees(n):
            total += 1
            if n == 1:
                continue
            if families.tree_poly(t) != tree_avalanche_polynomial(t.to_graph()):
                bad += 1
        return bad == 0, f"{total} labeled trees on {n} vertices, {bad} mismatches"
    if kind == "cycle":
        closed, g = families.cycle_poly(n), cycle_graph(n)
    elif kind == "complete":
        closed, g = families.complete_poly(n), complete_graph(n)
    else:
        closed, g = families.wheel_poly(n), wheel_graph(n)
    brute = avalanche_polynomial(g, limit, workers=workers)
    return closed == brute, f"{len(brute)} terms"


def cmd_verify(args, out):
    start = {"tree": 1, "cycle": 2, "complete": 2, "wheel": 3}[args.kind]
    ok_all = True
    for n in range(start, args.max_n + 1):
        ok, detail = verify_family(args.kind, n, _limit(args), args.threads)
        ok_all &= ok
        print(dumps({"kind": args.kind, "n": n, "ok": ok, "detail": detail}), file=out)
    return 0 if ok_all else 1


def cmd_tree_reconstruct(args, out):
    with open(args.poly) as fh:
        p = MultiPoly.from_json(json.load(fh))
    t = reconstruct_tree(p)
    print(dumps({"parents": t.parents()}), file=out)


def _complete_size(spec: str) -> int:
    m = re.fullmatch(r"[Kk]_?(\d+)", spec)
    if m:
        return int(m.group(1))
    g = load_graph(spec)
    if any(g.weight(u, v) != 1 for u in range(g.n_vertices) for v in range(g.n_vertices) if u != v):
        raise GraphError("phi is defined on complete graphs only")
    return g.n_vertices


def cmd_phi(args, out):
    size = _complete_size(args.graph)
    c = parse_sandpile(args.sandpile)
    if len(c) != size - 1:
        raise GraphError(f"K_{size} needs a sandpile with {size - 1} entries")
    img = parking.phi(c, args.vertex)
    print(dumps(img.to_json()), file=out)


def cmd_parking(args, out):
    if args.check:
        with open(args.check) as fh:
            p = json.load(fh)
        print(dumps({"parking": parking.is_parking(p)}), file=out)
    elif args.from_sandpile:
        c = parse_sandpile(args.from_sandpile)
        print(dumps({"parking": list(parking.recurrent_to_parking(c))}), file=out)
    elif args.to_sandpile:
        p = _ints(args.to_sandpile)
        print(dumps({"recurrent": list(parking.parking_to_recurrent(p))}), file=out)


def cmd_grid(args, out, err):
    if args.seed is None:
        print("notice: no --seed given, using seed 0", file=err)
        seed = 0
    else:
        seed = args.seed
    hist = grid_experiment(args.rows, args.cols, args.drops, seed)
    slope = powerlaw_slope(hist)
    report = {"rows": args.rows, "cols": args.cols, "drops": args.drops, "seed": seed,
              "prng": PRNG_NAME, "histogram": hist, "total": sum(hist.values()),
              "loglog_slope": None if slope is None else round(slope, 4)}
    print(dumps(report), file=out)


def cmd_snf(args, out):
    g = graph_from_args(args)
    factors = invariant_factors(reduced_laplacian(g))
    nontrivial = [d for d in factors if d != 1]
    if args.format == "text":
        print(" ".join(map(str, nontrivial)) or "1", file=out)
    else:
        print(dumps({"invariant_factors": factors, "nontrivial": nontrivial,
                     "order": spanning_tree_count(g)}), file=out)


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="avalanche", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt(p, default="json"):
        p.add_argument("--format", choices=("text", "json"), default=default)

    p = sub.add_parser("poly", help="multivariate avalanche polynomial by simulation")
    add_graph_args(p)
    add_limit_args(p)
    fmt(p)
    spec = p.add_mutually_exclusive_group()
    spec.add_argument("--univariate", action="store_true")
    spec.add_argument("--burst", action="store_true")
    p.add_argument("--records", metavar="OUT.jsonl", help="also write every principal avalanche")

    for name, helptext in (("dist", "avalanche size distribution"),
                           ("burst", "burst size distribution")):
        p = sub.add_parser(name, help=helptext)
        add_graph_args(p)
        add_limit_args(p)
        fmt(p)

    p = sub.add_parser("recurrents", help="list or count recurrent sandpiles")
    add_graph_args(p)
    add_limit_args(p)
    fmt(p, "text")
    p.add_argument("--count", action="store_true")

    p = sub.add_parser("family", help="closed-form polynomial for a family")
    p.add_argument("--kind", choices=("tree", "cycle", "complete", "wheel"), required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--parents")
    fmt(p, "text")

    p = sub.add_parser("verify", help="closed form against brute force for a range of sizes")
    p.add_argument("--kind", choices=("tree", "cycle", "complete", "wheel"), required=True)
    p.add_argument("--max-n", type=int, required=True)
    add_limit_args(p)

    p = sub.add_parser("tree-reconstruct", help="recover a rooted tree from its polynomial")
    p.add_argument("--poly", required=True, help="polynomial JSON file")

    p = sub.add_parser("phi", help="avalanche decomposition on a complete graph")
    p.add_argument("--graph", required=True, help="K<N> or a graph JSON file")
    p.add_argument("--sandpile", required=True, help="e.g. 8,7,8,1,0,3,7,2,4")
    p.add_argument("--vertex", type=int, required=True, help="i for v_i")

    p = sub.add_parser("parking", help="parking function checks and conversions")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--check", metavar="P.json")
    g.add_argument("--from-sandpile", metavar="C")
    g.add_argument("--to-sandpile", metavar="P")

    p = sub.add_parser("grid-experiment", help="random drops on the square-grid sandpile")
    p.add_argument("--rows", type=int, default=20)
    p.add_argument("--cols", type=int, default=20)
    p.add_argument("--drops", type=int, default=100000)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("snf", help="invariant factors of the reduced Laplacian")
    add_graph_args(p)
    fmt(p)
    return ap


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "poly": cmd_poly, "dist": cmd_dist, "burst": cmd_burst, "recurrents": cmd_recurrents,
        "family": cmd_family, "verify": cmd_verify, "tree-reconstruct": cmd_tree_reconstruct,
        "phi": cmd_phi, "parking": cmd_parking, "snf": cmd_snf,
    }
    try:
        if args.command == "grid-experiment":
            status = cmd_grid(args, out, err)
        else:
            status = handlers[args.command](args, out)
    except (AvalancheError, ValueError, OSError) as exc:
        print(f"avalanche: error: {exc}", file=err)
        return 1
    return status or 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
