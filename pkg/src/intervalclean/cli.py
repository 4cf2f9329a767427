"""Command-line front end.

Exit codes: 0 = solvable/isomorphic/ok, 1 = not solvable/not isomorphic,
2 = usage or input error.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io as gio
from .cleaner import CleaningInstance, Trace, interval_cleaning
from .graphs import GraphError, bits
from .hardness import CliqueInstance, build_clique_reduction
from .modules import complete_modules
from .oracle import brute_force_clean, plant_instance
from .pqtree import are_isomorphic, build_labeled, format_tree


def _load(path: str, model: str | None = None):
    if model is not None:
        return gio.read_graph(path, model)
    return gio.read_graph(path)


def _cmd_clean(args) -> int:
    gp = _load(args.gprime)
    g = _load(args.g, args.model)
    trace = Trace() if args.trace else None
    sol = interval_cleaning(CleaningInstance(gp, g), trace)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            for ev in trace.events:
                fh.write(json.dumps(ev) + "\n")
    if sol is None:
        return 1
    print(" ".join(str(v) for v in sorted(sol.deleted)))
    return 0


def _cmd_oracle_clean(args) -> int:
    gp = _load(args.gprime)
    g = _load(args.g, args.model)
    sol = brute_force_clean(CleaningInstance(gp, g), limit_n=args.limit)
    if sol is None:
        return 1
    print(" ".join(str(v) for v in sorted(sol)))
    return 0


def _cmd_iso(args) -> int:
    g1 = _load(args.g1)
    g2 = _load(args.g2)
    if are_isomorphic(g1, g2):
        print("isomorphic")
        return 0
    print("not isomorphic")
    return 1


def _cmd_pqtree(args) -> int:
    g = _load(args.g, args.model)
    sys.stdout.write(format_tree(build_labeled(g)))
    return 0


def _cmd_modules(args) -> int:
    g = _load(args.g, args.model)
    for mod in complete_modules(g):
        verts = ",".join(str(v) for v in sorted(mod.vertices))
        if mod.witness[0] == "subtree":
            wit = "subtree"
        else:
            _tag, _node, a, b = mod.witness
            wit = f"qblock[{a},{b}]"
        flags = []
        if mod.simple:
            flags.append("simple")
        if mod.shortness is not None:
            flags.append(f"short={mod.shortness}")
        print(f"{{{verts}}} {wit} {' '.join(flags)}".rstrip())
    return 0


def _cmd_gen_hardness(args) -> int:
    f = _load(args.f)
    h, g = build_clique_reduction(CliqueInstance(f, args.k))
    p = args.out_prefix
    gio.write_graph(f"{p}_H.graph", h)
    gio.write_intervals(f"{p}_H.intervals", h)
    gio.write_graph(f"{p}_G.graph", g)
    gio.write_intervals(f"{p}_G.intervals", g)
    print(f"{p}_H.graph {p}_H.intervals {p}_G.graph {p}_G.intervals")
    return 0


def _cmd_gen_random(args) -> int:
    pi = plant_instance(args.n, args.k, args.seed, args.density)
    p = args.out_prefix
    gio.write_graph(f"{p}_Gprime.graph", pi.instance.gprime)
    gio.write_intervals(f"{p}_Gprime.intervals", pi.instance.gprime)
    gio.write_graph(f"{p}_G.graph", pi.instance.g)
    gio.write_intervals(f"{p}_G.intervals", pi.instance.g)
    print(" ".join(str(v) for v in sorted(pi.planted)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="intervalclean")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("clean", help="solve a cleaning instance")
    p.add_argument("gprime", help="G'.graph (target)")
    p.add_argument("g", help="G.graph (dirty graph)")
    p.add_argument("--model", help="interval model for G")
    p.add_argument("--trace", help="write a JSON-lines event trace")
    p.add_argument("--jobs", type=int, default=1,
                   help="branch workers (current engine runs them sequentially)")
    p.set_defaults(run=_cmd_clean)

    p = sub.add_parser("oracle-clean", help="brute-force reference solver")
    p.add_argument("gprime")
    p.add_argument("g")
    p.add_argument("--model")
    p.add_argument("--limit", type=int, default=12)
    p.set_defaults(run=_cmd_oracle_clean)

    p = sub.add_parser("iso", help="interval-graph isomorphism test")
    p.add_argument("g1")
    p.add_argument("g2")
    p.set_defaults(run=_cmd_iso)

    p = sub.add_parser("pqtree", help="print the labeled PQ-tree")
    p.add_argument("g")
    p.add_argument("--model")
    p.set_defaults(run=_cmd_pqtree)

    p = sub.add_parser("modules", help="list complete modules")
    p.add_argument("g")
    p.add_argument("--model")
    p.set_defaults(run=_cmd_modules)

    p = sub.add_parser("gen-hardness", help="emit the clique-reduction pair")
    p.add_argument("f", help="clique-instance graph F")
    p.add_argument("k", type=int)
    p.add_argument("--out-prefix", default="hardness")
    p.set_defaults(run=_cmd_gen_hardness)

    p = sub.add_parser("gen-random", help="emit a planted cleaning instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--out-prefix", default="inst")
    p.set_defaults(run=_cmd_gen_random)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.run(args)
    except (GraphError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
