"""Enumeration of complete modules and their occurrences.

A complete module is witnessed either by a whole subtree of the PQ-tree
(case (a): R^-1(T_z), P-nodes only when R^-1(z) itself is nonempty) or by
a maximal label class of a Q-node whose covered children carry no other
vertices (case (b), the "simple" modules, always cliques).
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import GraphError, IntervalGraph, bits, induced_subgraph
from .pqtree import LabeledPQTree, PQNode, build_labeled, graph_code


@dataclass(frozen=True)
class CompleteModule:
    vertices: frozenset[int]
    witness: tuple  # ("subtree", node) or ("qblock", node, a, b)
    simple: bool
    shortness: int | None  # minimal h for which the module is h-short

    def is_short(self, h: int) -> bool:
        return self.shortness is not None and self.shortness <= h


def _module_sort_key(g: IntervalGraph, lt: LabeledPQTree, m: CompleteModule):
    run_left = min(lt.runs[v][0] for v in m.vertices)
    if g.model is not None:
        left = min(g.model[v].left for v in m.vertices)
    else:
        left = run_left
    return (left, run_left, min(m.vertices))


def complete_modules(
    g: IntervalGraph, lt: LabeledPQTree | None = None
) -> list[CompleteModule]:
    """All complete modules of g, ordered by the interval representation."""
    if lt is None:
        lt = build_labeled(g)
    out: list[CompleteModule] = []
    seen: set[frozenset[int]] = set()
    if lt.tree.root is None:
        return out

    def visit(node: PQNode) -> None:
        mask = lt.subtree_mask(node)
        if mask and not (node.kind == "P" and not lt.rinv_of(node)):
            vs = frozenset(bits(mask))
            if vs not in seen:
                seen.add(vs)
                shortness = 0 if node.kind == "L" else None
                out.append(CompleteModule(vs, ("subtree", node), False, shortness))
        for ch in node.children:
            visit(ch)

    visit(lt.tree.root)
    for node in lt.nodes():
        if node.kind != "Q":
            continue
        classes = lt.q_classes(node)
        for (a, b) in sorted(classes):
            if any(lt.subtree_mask(node.children[i - 1]) for i in range(a, b + 1)):
                continue
            nested = False
            for (c, d) in classes:
                if (c, d) != (a, b) and a <= c and d <= b:
                    nested = True
                    break
            if nested:
                continue
            vs = frozenset(classes[(a, b)])
            if vs not in seen:
                seen.add(vs)
                out.append(CompleteModule(vs, ("qblock", node, a, b), True, b - a))
    out.sort(key=lambda m: _module_sort_key(g, lt, m))
    return out


def h_short_complete_modules(
    g: IntervalGraph, lt: LabeledPQTree | None = None, h: int = 0
) -> list[CompleteModule]:
    """Complete modules witnessed by a leaf or by a Q-block of width <= h."""
    return [m for m in complete_modules(g, lt) if m.is_short(h)]


def occurrences_as_complete_module(
    h_pattern: IntervalGraph, g: IntervalGraph, lt: LabeledPQTree | None = None
) -> list[frozenset[int]]:
    """The occurrence list M(H, G), in interval-representation order."""
    if h_pattern.n == 0:
        return []
    code = graph_code(h_pattern)
    edges = h_pattern.edge_count()
    out = []
    for m in complete_modules(g, lt):
        if len(m.vertices) != h_pattern.n:
            continue
        sub = induced_subgraph(g, m.vertices)
        if sub.edge_count() != edges:
            continue
        if graph_code(sub) == code:
            out.append(m.vertices)
    return out


def occurrences_as_short_module(
    h_pattern: IntervalGraph,
    g: IntervalGraph,
    h: int,
    lt: LabeledPQTree | None = None,
) -> list[frozenset[int]]:
    """The occurrence list N(H, G): h-short occurrences of a clique pattern."""
    want = h_pattern.n * (h_pattern.n - 1) // 2
    if h_pattern.edge_count() != want:
        raise GraphError("short-module occurrences need a clique pattern")
    code = graph_code(h_pattern)
    out = []
    for m in complete_modules(g, lt):
        if not m.is_short(h) or len(m.vertices) != h_pattern.n:
            continue
        sub = induced_subgraph(g, m.vertices)
        if graph_code(sub) == code:
            out.append(m.vertices)
    return out
