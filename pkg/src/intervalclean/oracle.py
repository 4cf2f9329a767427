"""Exhaustive reference implementations and seeded instance generators.

Everything here is deliberately independent of the PQ-tree machinery so it
can validate the main algorithms at desk scale.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .graphs import GraphError, Interval, IntervalGraph, bits, induced_subgraph


class OracleLimitError(GraphError):
    """The instance exceeds the oracle's exhaustive-search limit."""


def brute_force_iso(
    g1: IntervalGraph, g2: IntervalGraph, limit: int = 9
) -> dict[int, int] | None:
    """Backtracking isomorphism search over degree-compatible bijections."""
    if max(g1.n, g2.n) > limit:
        raise OracleLimitError(f"brute_force_iso limited to {limit} vertices")
    if g1.n != g2.n or g1.edge_count() != g2.edge_count():
        return None
    deg1 = [g1.degree(v) for v in range(g1.n)]
    deg2 = [g2.degree(v) for v in range(g2.n)]
    if sorted(deg1) != sorted(deg2):
        return None
    order = sorted(range(g1.n), key=lambda v: -deg1[v])
    assigned: dict[int, int] = {}
    used = 0

    def rec(idx: int) -> bool:
        nonlocal used
        if idx == len(order):
            return True
        u = order[idx]
        for v in range(g2.n):
            if used >> v & 1 or deg2[v] != deg1[u]:
                continue
            ok = True
            for w, x in assigned.items():
                if g1.has_edge(u, w) != g2.has_edge(v, x):
                    ok = False
                    break
            if not ok:
                continue
            assigned[u] = v
            used |= 1 << v
            if rec(idx + 1):
                return True
            del assigned[u]
            used &= ~(1 << v)
        return False

    if rec(0):
        return dict(assigned)
    return None


def brute_force_clean(inst, limit_n: int = 12) -> frozenset[int] | None:
    """Try every k-subset of V(G) in lexicographic order; None if unsolvable."""
    gp, g = inst.gprime, inst.g
    if g.n > limit_n:
        raise OracleLimitError(f"brute_force_clean limited to {limit_n} vertices")
    k = g.n - gp.n
    if k < 0:
        return None
    for sub in combinations(range(g.n), k):
        rest = sorted(set(range(g.n)) - set(sub))
        if brute_force_iso(gp, induced_subgraph(g, rest), limit=limit_n) is not None:
            return frozenset(sub)
    return None


def _neighbor_degree_profile(g: IntervalGraph, v: int) -> list[int]:
    return sorted((g.degree(u) for u in bits(g.adj[v])), reverse=True)


def _dominates(big: list[int], small: list[int]) -> bool:
    if len(big) < len(small):
        return False
    return all(big[i] >= small[i] for i in range(len(small)))


def induced_subgraph_embedding(
    h: IntervalGraph, g: IntervalGraph
) -> dict[int, int] | None:
    """Backtracking search for an induced embedding of h into g.

    Complete; prunes with degree/neighbor-degree dominance and maintains
    per-vertex candidate masks with forward checking, so it handles the
    hardness-reduction instances despite their size.
    """
    if h.n == 0:
        return {}
    if h.n > g.n:
        return None
    gprof = [_neighbor_degree_profile(g, v) for v in range(g.n)]
    hprof = [_neighbor_degree_profile(h, u) for u in range(h.n)]
    cand = []
    for u in range(h.n):
        mask = 0
        for v in range(g.n):
            if g.degree(v) >= h.degree(u) and _dominates(gprof[v], hprof[u]):
                mask |= 1 << v
        if mask == 0:
            return None
        cand.append(mask)

    full = g.full_mask

    def refine(domains: list[int]) -> bool:
        changed = True
        while changed:
            changed = False
            for u in range(h.n):
                du = domains[u]
                for w in range(h.n):
                    if w == u:
                        continue
                    dw = domains[w]
                    adjacent = h.has_edge(u, w)
                    keep = 0
                    for v in bits(du):
                        other = g.adj[v] if adjacent else (full & ~g.adj[v] & ~(1 << v))
                        if other & dw:
                            keep |= 1 << v
                    if keep != du:
                        domains[u] = keep
                        changed = True
                        if keep == 0:
                            return False
                        du = keep
        return True

    if not refine(cand):
        return None
    assignment: dict[int, int] = {}

    def rec(domains: list[int]) -> bool:
        pick, best = -1, None
        for u in range(h.n):
            if u in assignment:
                continue
            c = domains[u].bit_count()
            if best is None or c < best:
                pick, best = u, c
        if pick == -1:
            return True
        for v in bits(domains[pick]):
            nxt = list(domains)
            nxt[pick] = 1 << v
            ok = True
            for w in range(h.n):
                if w == pick or w in assignment:
                    continue
                if h.has_edge(pick, w):
                    nxt[w] &= g.adj[v]
                else:
                    nxt[w] &= full & ~g.adj[v] & ~(1 << v)
                if nxt[w] == 0:
                    ok = False
                    break
            if ok:
                assignment[pick] = v
                if rec(nxt):
                    return True
                del assignment[pick]
        return False

    if rec(cand):
        return dict(assignment)
    return None


def random_interval_graph(
    n: int, seed: int, density_knob: float = 1.0
) -> IntervalGraph:
    """Seeded random interval model on [0, 4n]; lengths uniform in [1, knob*n]."""
    if n < 1:
        raise GraphError("random_interval_graph needs n >= 1")
    rng = random.Random(seed)
    span = 4 * n
    max_len = max(1, round(density_knob * n))
    model = {}
    for v in range(n):
        left = rng.randint(0, span)
        length = rng.randint(1, max_len)
        model[v] = (left, min(left + length, span))
    from .graphs import graph_from_intervals

    return graph_from_intervals(model)


def _relabel_with_model(g: IntervalGraph, perm: list[int]) -> IntervalGraph:
    adj = [0] * g.n
    for u, v in g.edges():
        adj[perm[u]] |= 1 << perm[v]
        adj[perm[v]] |= 1 << perm[u]
    model = None
    if g.model is not None:
        slots: list[Interval | None] = [None] * g.n
        for v in range(g.n):
            slots[perm[v]] = g.model[v]
        model = tuple(slots)
    return IntervalGraph(g.n, tuple(adj), model)


@dataclass(frozen=True)
class PlantedInstance:
    instance: "CleaningInstance"
    planted: frozenset[int]
    seed: int


def plant_instance(
    n: int, k: int, seed: int, density_knob: float = 1.0
) -> PlantedInstance:
    """Random G, a known k-subset deleted and relabeled to form G'."""
    from .cleaner import CleaningInstance

    if k >= n:
        raise GraphError("plant_instance needs k < n")
    g = random_interval_graph(n, seed, density_knob)
    rng = random.Random(f"plant:{seed}:{n}:{k}")
    planted = frozenset(rng.sample(range(n), k))
    keep = sorted(set(range(n)) - planted)
    gp = induced_subgraph(g, keep)
    perm = list(range(gp.n))
    rng.shuffle(perm)
    gp = _relabel_with_model(gp, perm)
    return PlantedInstance(CleaningInstance(gp, g), planted, seed)
