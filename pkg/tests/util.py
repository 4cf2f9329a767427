"""Shared brute-force helpers for the test suite.

These deliberately avoid the library's own data paths (plain sets and
itertools) so they can serve as independent oracles.
"""

from __future__ import annotations

import random
from itertools import combinations, permutations

from intervalclean.graphs import IntervalGraph, Interval, graph_from_intervals


def random_model(n: int, seed: int, span: int | None = None, max_len: int | None = None):
    rng = random.Random(seed)
    span = span if span is not None else 4 * n
    max_len = max_len if max_len is not None else max(1, n)
    model = {}
    for v in range(n):
        left = rng.randint(0, span)
        length = rng.randint(0, max_len)
        model[v] = (left, min(left + length, span))
    return model


def random_interval(n: int, seed: int) -> IntervalGraph:
    return graph_from_intervals(random_model(n, seed))


def adjacency_sets(g: IntervalGraph) -> dict[int, set[int]]:
    return {v: {u for u in range(g.n) if g.has_edge(u, v)} for v in range(g.n)}


def brute_maximal_cliques(g: IntervalGraph) -> set[frozenset[int]]:
    nbr = adjacency_sets(g)
    cliques = set()
    verts = list(range(g.n))
    for r in range(1, g.n + 1):
        for sub in combinations(verts, r):
            if all(v in nbr[u] for u, v in combinations(sub, 2)):
                cliques.add(frozenset(sub))
    maximal = set()
    for c in cliques:
        if not any(c < d for d in cliques):
            maximal.add(c)
    return maximal


def brute_is_complete_module(g: IntervalGraph, mod: set[int]) -> bool:
    nbr = adjacency_sets(g)
    mod = set(mod)
    if not mod:
        return False
    for x in set(range(g.n)) - mod:
        inter = nbr[x] & mod
        if inter and inter != mod:
            return False
    seen = {min(mod)}
    queue = [min(mod)]
    while queue:
        v = queue.pop()
        for u in nbr[v] & mod:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    if seen != mod:
        return False
    closed = set(mod)
    for v in mod:
        closed |= nbr[v]
    for x in closed - mod:
        if nbr[x] <= closed:
            return False
    return True


def brute_isomorphism(g1: IntervalGraph, g2: IntervalGraph):
    """Exhaustive bijection search; returns a map or None."""
    if g1.n != g2.n or g1.edge_count() != g2.edge_count():
        return None
    if sorted(g1.degree(v) for v in range(g1.n)) != sorted(
        g2.degree(v) for v in range(g2.n)
    ):
        return None
    for perm in permutations(range(g2.n)):
        ok = True
        for u in range(g1.n):
            for v in range(u + 1, g1.n):
                if g1.has_edge(u, v) != g2.has_edge(perm[u], perm[v]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return {v: perm[v] for v in range(g1.n)}
    return None


def consecutive_orderings(cliques: list[frozenset[int]], n: int):
    """All orderings of the given cliques where every vertex is consecutive."""
    for perm in permutations(range(len(cliques))):
        good = True
        for v in range(n):
            hits = [i for i, ci in enumerate(perm) if v in cliques[ci]]
            if hits and hits != list(range(hits[0], hits[-1] + 1)):
                good = False
                break
        if good:
            yield tuple(perm)


def equivalent_frontiers(node, cliques_count_guard: int = 9):
    """Frontiers of all trees equivalent to the given PQ-tree (tiny inputs)."""
    from itertools import permutations as perms

    if node is None:
        return {()}
    if node.kind == "L":
        return {(node.clique,)}
    child_sets = [sorted(equivalent_frontiers(c)) for c in node.children]

    def cat(seq_choice):
        out = []
        for s in seq_choice:
            out.extend(s)
        return tuple(out)

    results = set()
    if node.kind == "P":
        for order in perms(range(len(child_sets))):
            stack = [()]
            for idx in order:
                stack = [pref + tuple([opt]) for pref in stack for opt in child_sets[idx]]
            for choice in stack:
                results.add(cat(choice))
    else:
        for direction in (1, -1):
            idxs = list(range(len(child_sets)))[::direction]
            stack = [()]
            for idx in idxs:
                stack = [pref + tuple([opt]) for pref in stack for opt in child_sets[idx]]
            for choice in stack:
                results.add(cat(choice))
    return results


def relabel(g: IntervalGraph, perm: list[int]) -> IntervalGraph:
    """New graph with vertex v renamed perm[v]; drops the model."""
    edges = [(perm[u], perm[v]) for u, v in g.edges()]
    return IntervalGraph.from_edges(g.n, edges)


def path_graph(n: int) -> IntervalGraph:
    return IntervalGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> IntervalGraph:
    return IntervalGraph.from_edges(n, list(combinations(range(n), 2)))


def star_graph(leaves: int) -> IntervalGraph:
    return IntervalGraph.from_edges(leaves + 1, [(0, i + 1) for i in range(leaves)])


def disjoint_union(*graphs: IntervalGraph) -> IntervalGraph:
    n = 0
    edges = []
    for g in graphs:
        edges.extend((u + n, v + n) for u, v in g.edges())
        n += g.n
    return IntervalGraph.from_edges(n, edges)


FIG1_MODEL = {
    # Reconstruction of the running example: cliques at positions 1..8 are
    # {a*,f}, {b1,b2,f,g}, {b3,f,g}, then five c/d/e cliques under one Q-node.
    # Vertex order: a1 a2 a3 b1 b2 b3 c1 c2 c3 c4 d1 d2 d3 d4 e1 e2 f g
    0: (1, 1),
    1: (1, 1),
    2: (1, 1),
    3: (2, 2),
    4: (2, 2),
    5: (3, 3),
    6: (4, 4),
    7: (4, 5),
    8: (4, 6),
    9: (4, 7),
    10: (5, 8),
    11: (6, 8),
    12: (7, 8),
    13: (8, 8),
    14: (5, 7),
    15: (5, 7),
    16: (1, 3),
    17: (2, 8),
}

FIG1_NAMES = {
    0: "a1", 1: "a2", 2: "a3", 3: "b1", 4: "b2", 5: "b3",
    6: "c1", 7: "c2", 8: "c3", 9: "c4", 10: "d1", 11: "d2", 12: "d3",
    13: "d4", 14: "e1", 15: "e2", 16: "f", 17: "g",
}


def fig1_graph() -> IntervalGraph:
    return graph_from_intervals(FIG1_MODEL)
