"""Interval graph substrate: adjacency, interval models, cliques, modules.

Vertices are dense integers 0..n-1.  Adjacency is kept as one bitmask per
vertex, which makes the subset/neighborhood tests used throughout the
package cheap even for a few hundred vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, NamedTuple, Sequence


class GraphError(ValueError):
    """Malformed graph input: bad interval, unknown vertex, bad file."""


class NotIntervalError(GraphError):
    """The graph admits no consecutive ordering of its maximal cliques."""


class Interval(NamedTuple):
    left: int
    right: int

    def intersects(self, other: "Interval") -> bool:
        # closed intervals: touching endpoints count as intersecting
        return self.left <= other.right and other.left <= self.right


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class IntervalGraph:
    """Undirected graph with an optional interval representation.

    ``adj[v]`` is the neighbor bitmask of v (irreflexive, symmetric).
    ``model``, when present, is a dense tuple with ``model[v]`` the closed
    interval of v; adjacency then equals pairwise interval intersection.
    """

    n: int
    adj: tuple[int, ...]
    model: tuple[Interval, ...] | None = None

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v]

    def degree(self, v: int) -> int:
        return self.neighbors(v).bit_count()

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1) << (u + 1)
            for v in bits(rest):
                out.append((u, v))
        return out

    def edge_count(self) -> int:
        return sum(self.adj[v].bit_count() for v in range(self.n)) // 2

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"unknown vertex id {v} (n={self.n})")

    @staticmethod
    def from_edges(n: int, edges, model=None) -> "IntervalGraph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) outside [0,{n})")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        if model is not None:
            model = tuple(Interval(*model[v]) for v in range(n))
        return IntervalGraph(n, tuple(adj), model)


def graph_from_intervals(model) -> IntervalGraph:
    """Build the intersection graph of a set of closed intervals.

    ``model`` maps dense vertex ids 0..n-1 to (left, right) pairs; a
    sequence indexed by vertex id is accepted as well.
    """
    if isinstance(model, Mapping):
        n = len(model)
        if set(model.keys()) != set(range(n)):
            raise GraphError("interval model ids must be dense 0..n-1")
        items = [model[v] for v in range(n)]
    else:
        items = list(model)
        n = len(items)
    ivs = []
    for v, iv in enumerate(items):
        iv = Interval(int(iv[0]), int(iv[1]))
        if iv.left > iv.right:
            raise GraphError(f"malformed interval for vertex {v}: {iv}")
        ivs.append(iv)
    adj = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if ivs[u].intersects(ivs[v]):
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return IntervalGraph(n, tuple(adj), tuple(ivs))


@dataclass(frozen=True)
class CliqueOrdering:
    """Maximal cliques (as vertex bitmasks) in a consecutive order."""

    cliques: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.cliques)

    def as_sets(self) -> list[frozenset[int]]:
        return [frozenset(bits(c)) for c in self.cliques]

    def is_consecutive(self, n: int) -> bool:
        for v in range(n):
            hits = [i for i, c in enumerate(self.cliques) if c >> v & 1]
            if hits and hits != list(range(hits[0], hits[-1] + 1)):
                return False
        return True


def _sweep_cliques(g: IntervalGraph) -> CliqueOrdering:
    """Maximal cliques of a modeled graph, ordered by a left-to-right sweep.

    The stab set at each distinct right endpoint is a clique candidate; a
    candidate is non-maximal exactly when it is contained in an adjacent
    candidate, so one stack pass suffices.
    """
    model = g.model
    assert model is not None
    order = sorted(range(g.n), key=lambda v: (model[v].right, v))
    lefts = sorted(range(g.n), key=lambda v: (model[v].left, v))
    candidates = []
    li = 0
    active = 0
    seen_rights = set()
    for v in order:
        p = model[v].right
        if p in seen_rights:
            continue
        seen_rights.add(p)
        while li < g.n and model[lefts[li]].left <= p:
            active |= 1 << lefts[li]
            li += 1
        stab = 0
        for u in bits(active):
            if model[u].right >= p:
                stab |= 1 << u
        candidates.append(stab)
    stack: list[int] = []
    for c in candidates:
        while stack and stack[-1] & c == stack[-1]:
            stack.pop()
        if stack and stack[-1] & c == c:
            continue
        stack.append(c)
    return CliqueOrdering(tuple(stack))


def maximal_cliques_ordered(g: IntervalGraph) -> CliqueOrdering:
    """Maximal cliques in a consecutive order.

    Uses the interval model when present; otherwise runs interval-graph
    recognition (raising NotIntervalError on failure).
    """
    if g.n == 0:
        return CliqueOrdering(())
    if g.model is not None:
        return _sweep_cliques(g)
    from . import pqtree

    return pqtree.consecutive_clique_order(g)


def connected_components(g: IntervalGraph) -> list[frozenset[int]]:
    """Components as vertex sets, ordered by smallest member."""
    seen = 0
    comps = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append(frozenset(bits(comp)))
    return comps


def universal_vertices(g: IntervalGraph) -> frozenset[int]:
    full = g.full_mask
    return frozenset(v for v in range(g.n) if g.adj[v] == full ^ (1 << v))


def induced_subgraph(g: IntervalGraph, keep) -> IntervalGraph:
    """Induced subgraph on ``keep``, relabeled densely in sorted-id order."""
    ids = sorted(set(keep))
    for v in ids:
        g._check_vertex(v)
    pos = {v: i for i, v in enumerate(ids)}
    adj = [0] * len(ids)
    for i, v in enumerate(ids):
        for u in bits(g.adj[v]):
            if u in pos:
                adj[i] |= 1 << pos[u]
    model = None
    if g.model is not None:
        model = tuple(g.model[v] for v in ids)
    return IntervalGraph(len(ids), tuple(adj), model)


def is_complete_module(g: IntervalGraph, module) -> bool:
    """Check the three-clause definition of a complete module.

    True iff ``module`` is a module, induces a connected subgraph, and no
    outside neighbor x of it has N(x) inside its closed neighborhood.
    """
    mmask = mask_of(module)
    if mmask == 0:
        raise GraphError("complete-module test on empty set")
    if mmask & ~g.full_mask:
        raise GraphError("module contains unknown vertices")
    for x in range(g.n):
        if mmask >> x & 1:
            continue
        hit = g.adj[x] & mmask
        if hit != 0 and hit != mmask:
            return False
    # connectivity of g[module]
    start = mmask & -mmask
    comp = start
    frontier = start
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= g.adj[u] & mmask
        frontier = nxt & ~comp
        comp |= nxt
    if comp != mmask:
        return False
    closed = mmask
    for v in bits(mmask):
        closed |= g.adj[v]
    for x in bits(closed & ~mmask):
        if g.adj[x] & ~closed == 0:
            return False
    return True
