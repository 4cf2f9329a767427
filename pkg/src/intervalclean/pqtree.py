"""PQ-trees of interval graphs: construction, labels, canonical codes, isomorphism.

The tree is built from a consecutive ordering of the maximal cliques by
recursive strong-interval decomposition of the vertex runs: overlap
components of proper runs either tile the universe (P-node over the tiles)
or span it completely (Q-node over the atoms cut by the spanning
component).  Labels follow the characteristic-node scheme: every vertex is
attached to the deepest node whose frontier covers all its cliques, and
vertices attached to a Q-node carry the block of children they span.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .graphs import (
    CliqueOrdering,
    GraphError,
    IntervalGraph,
    NotIntervalError,
    bits,
    mask_of,
    maximal_cliques_ordered,
)


class NotIsomorphicError(GraphError):
    """extract_isomorphism was called on non-isomorphic graphs."""


@dataclass(frozen=True, eq=False)
class PQNode:
    kind: str  # 'P', 'Q' or 'L'
    children: tuple["PQNode", ...] = ()
    clique: int = -1  # clique index, leaves only


@dataclass(frozen=True, eq=False)
class PQTree:
    root: PQNode | None
    cliques: tuple[int, ...]  # vertex bitmask per clique index

    def frontier(self) -> tuple[int, ...]:
        """Clique indices at the leaves, left to right."""
        if self.root is None:
            return ()
        out: list[int] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.kind == "L":
                out.append(node.clique)
            else:
                stack.extend(reversed(node.children))
        return tuple(out)


# ---------------------------------------------------------------------------
# Recognition without a model: chordality, then a consecutive-ordering search.


def _mcs_peo(g: IntervalGraph) -> list[int] | None:
    """Maximum-cardinality search; returns a PEO or None if not chordal."""
    weight = [0] * g.n
    picked = 0
    order = []  # reverse elimination order
    for _ in range(g.n):
        best, bw = -1, -1
        for v in range(g.n):
            if not picked >> v & 1 and weight[v] > bw:
                best, bw = v, weight[v]
        order.append(best)
        picked |= 1 << best
        for u in bits(g.adj[best] & ~picked):
            weight[u] += 1
    elim = list(reversed(order))
    pos = {v: i for i, v in enumerate(elim)}
    for i, v in enumerate(elim):
        later = [u for u in bits(g.adj[v]) if pos[u] > i]
        if not later:
            continue
        w = min(later, key=lambda u: pos[u])
        rest = mask_of(u for u in later if u != w)
        if rest & ~g.adj[w]:
            return None
    return elim


def _chordal_maximal_cliques(g: IntervalGraph) -> list[int]:
    elim = _mcs_peo(g)
    if elim is None:
        raise NotIntervalError("graph is not chordal")
    pos = {v: i for i, v in enumerate(elim)}
    cands = []
    for i, v in enumerate(elim):
        c = 1 << v
        for u in bits(g.adj[v]):
            if pos[u] > i:
                c |= 1 << u
        cands.append(c)
    cliques = []
    for c in cands:
        if not any(c != d and c & d == c for d in cands):
            if c not in cliques:
                cliques.append(c)
    return cliques


def _consecutive_order_search(cliques: list[int]) -> list[int] | None:
    """Backtracking search for a consecutive ordering of clique bitmasks.

    A placed-and-unfinished vertex must occur in the next clique, and a
    finished vertex must not reappear; these two prunes keep the search
    near-greedy on actual interval graphs while staying complete.
    """
    k = len(cliques)
    remaining: dict[int, int] = {}
    for c in cliques:
        for v in bits(c):
            remaining[v] = remaining.get(v, 0) + 1
    order: list[int] = []
    used = [False] * k

    def rec(appeared: int, open_mask: int) -> bool:
        if len(order) == k:
            return True
        closed = appeared & ~open_mask
        for ci in range(k):
            if used[ci]:
                continue
            c = cliques[ci]
            if open_mask & ~c or c & closed:
                continue
            new_open = open_mask
            newly = c & ~appeared
            for v in bits(c):
                remaining[v] -= 1
                if remaining[v] == 0:
                    new_open &= ~(1 << v)
                elif newly >> v & 1:
                    new_open |= 1 << v
            used[ci] = True
            order.append(ci)
            if rec(appeared | c, new_open):
                return True
            order.pop()
            used[ci] = False
            for v in bits(c):
                remaining[v] += 1
        return False

    if rec(0, 0):
        return order
    return None


def consecutive_clique_order(g: IntervalGraph) -> CliqueOrdering:
    """Recognition path for graphs without a model."""
    cliques = _chordal_maximal_cliques(g)
    order = _consecutive_order_search(cliques)
    if order is None:
        raise NotIntervalError("maximal cliques admit no consecutive ordering")
    return CliqueOrdering(tuple(cliques[i] for i in order))


# ---------------------------------------------------------------------------
# Construction from a witness ordering.


def _vertex_runs(n: int, cliques: tuple[int, ...]) -> list[tuple[int, int]]:
    runs = []
    for v in range(n):
        hit = [i for i, c in enumerate(cliques) if c >> v & 1]
        if not hit:
            raise GraphError(f"vertex {v} in no maximal clique")
        if hit[-1] - hit[0] + 1 != len(hit):
            raise NotIntervalError("clique ordering is not consecutive")
        runs.append((hit[0], hit[-1]))
    return runs


def _overlap_components(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    u = len(a)
    ov = (a[:, None] < a[None, :]) & (a[None, :] <= b[:, None]) & (b[:, None] < b[None, :])
    ov |= ov.T
    comp = np.full(u, -1, dtype=np.int64)
    cid = 0
    for i in range(u):
        if comp[i] >= 0:
            continue
        members = np.zeros(u, dtype=bool)
        members[i] = True
        frontier = members.copy()
        while frontier.any():
            nxt = ov[frontier].any(axis=0) & ~members
            members |= nxt
            frontier = nxt
        comp[members] = cid
        cid += 1
    return comp


def _build_node(lo: int, hi: int, runs: list[tuple[int, int]]) -> PQNode:
    """Strong-interval recursion over positions lo..hi.

    ``runs`` holds the distinct vertex runs strictly inside [lo, hi].
    """
    if lo == hi:
        return PQNode("L", clique=lo)
    if not runs:
        return PQNode("P", tuple(PQNode("L", clique=i) for i in range(lo, hi + 1)))
    a = np.fromiter((r[0] for r in runs), dtype=np.int64, count=len(runs))
    b = np.fromiter((r[1] for r in runs), dtype=np.int64, count=len(runs))
    comp = _overlap_components(a, b)
    cid = int(comp.max()) + 1
    spans = []
    for c in range(cid):
        sel = comp == c
        spans.append((int(a[sel].min()), int(b[sel].max())))
    top = None
    for c, s in enumerate(spans):
        if s == (lo, hi):
            if top is not None:
                raise GraphError("internal: two overlap classes span the node")
            top = c
    if top is not None:
        cuts = {lo, hi + 1}
        for i in range(len(runs)):
            if comp[i] == top:
                cuts.add(int(a[i]))
                cuts.add(int(b[i]) + 1)
        edges = sorted(cuts)
        atoms = [(edges[t], edges[t + 1] - 1) for t in range(len(edges) - 1)]
        if len(atoms) < 3:
            raise GraphError("internal: Q-node with fewer than 3 atoms")
        for r in runs:
            aligned = r[0] in cuts and r[1] + 1 in cuts
            in_one_atom = any(alo <= r[0] and r[1] <= ahi for alo, ahi in atoms)
            if not (aligned or in_one_atom):
                raise GraphError("internal: run crosses an atom boundary")
        children = []
        for alo, ahi in atoms:
            inside = sorted(
                {r for r in runs if alo <= r[0] and r[1] <= ahi and r != (alo, ahi)}
            )
            children.append(_build_node(alo, ahi, inside))
        return PQNode("Q", tuple(children))
    # no spanning class: maximal component spans plus uncovered positions tile
    maximal = []
    for i, s in enumerate(spans):
        if not any(
            j != i and spans[j][0] <= s[0] and s[1] <= spans[j][1] and spans[j] != s
            for j in range(cid)
        ):
            maximal.append(s)
    maximal = sorted(set(maximal))
    blocks = []
    p = lo
    for s in maximal:
        while p < s[0]:
            blocks.append((p, p))
            p += 1
        blocks.append(s)
        p = s[1] + 1
    while p <= hi:
        blocks.append((p, p))
        p += 1
    children = []
    for blo, bhi in blocks:
        inside = sorted(
            {r for r in runs if blo <= r[0] and r[1] <= bhi and r != (blo, bhi)}
        )
        children.append(_build_node(blo, bhi, inside))
    return PQNode("P", tuple(children))


def build_pqtree(g: IntervalGraph) -> PQTree:
    """PQ-tree representing g; raises NotIntervalError when g is not interval."""
    co = maximal_cliques_ordered(g)
    k = len(co)
    if k == 0:
        return PQTree(None, ())
    runs = _vertex_runs(g.n, co.cliques)
    proper = sorted({r for r in runs if r != (0, k - 1)})
    root = _build_node(0, k - 1, proper)
    return PQTree(root, co.cliques)


# ---------------------------------------------------------------------------
# Labeling.


@dataclass(eq=False)
class LabeledPQTree:
    graph: IntervalGraph
    tree: PQTree
    frontier: tuple[int, ...]  # clique index per leaf position
    runs: tuple[tuple[int, int], ...]  # per vertex, in leaf positions
    charnode: dict[int, PQNode]
    rinv: dict[PQNode, tuple[int, ...]]
    qblock: dict[int, tuple[int, int]]  # 1-based child block at R(v), Q-nodes
    span: dict[PQNode, tuple[int, int]]
    _subtree_masks: dict[PQNode, int] = field(default_factory=dict)
    _classes: dict[PQNode, dict[tuple[int, int], tuple[int, ...]]] = field(
        default_factory=dict
    )

    def rinv_of(self, node: PQNode) -> tuple[int, ...]:
        return self.rinv.get(node, ())

    def subtree_mask(self, node: PQNode) -> int:
        """Bitmask of vertices whose characteristic node lies in the subtree."""
        cached = self._subtree_masks.get(node)
        if cached is None:
            cached = mask_of(self.rinv_of(node))
            for ch in node.children:
                cached |= self.subtree_mask(ch)
            self._subtree_masks[node] = cached
        return cached

    def q_classes(self, q: PQNode) -> dict[tuple[int, int], tuple[int, ...]]:
        """Vertices of R^-1(q) grouped by their block, for a Q-node q."""
        cached = self._classes.get(q)
        if cached is None:
            groups: dict[tuple[int, int], list[int]] = {}
            for v in self.rinv_of(q):
                groups.setdefault(self.qblock[v], []).append(v)
            cached = {blk: tuple(sorted(vs)) for blk, vs in groups.items()}
            self._classes[q] = cached
        return cached

    def nodes(self) -> Iterator[PQNode]:
        if self.tree.root is None:
            return
        stack = [self.tree.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


def label_pqtree(g: IntervalGraph, t: PQTree) -> LabeledPQTree:
    """Attach characteristic nodes, blocks and label counts to a PQ-tree."""
    frontier = t.frontier()
    if g.n == 0:
        return LabeledPQTree(g, t, frontier, (), {}, {}, {}, {})
    runs = []
    for v in range(g.n):
        hit = [p for p, ci in enumerate(frontier) if t.cliques[ci] >> v & 1]
        if not hit or hit[-1] - hit[0] + 1 != len(hit):
            raise GraphError("tree does not represent the graph")
        runs.append((hit[0], hit[-1]))
    span: dict[PQNode, tuple[int, int]] = {}
    pos = 0

    def assign_spans(node: PQNode) -> tuple[int, int]:
        nonlocal pos
        if node.kind == "L":
            span[node] = (pos, pos)
            pos += 1
            return span[node]
        first = last = None
        for ch in node.children:
            lo, hi = assign_spans(ch)
            if first is None:
                first = lo
            last = hi
        span[node] = (first, last)
        return span[node]

    assign_spans(t.root)
    charnode: dict[int, PQNode] = {}
    qblock: dict[int, tuple[int, int]] = {}
    rinv: dict[PQNode, list[int]] = {}
    for v in range(g.n):
        lo, hi = runs[v]
        node = t.root
        while node.kind != "L":
            down = None
            for ch in node.children:
                s = span[ch]
                if s[0] <= lo and hi <= s[1]:
                    down = ch
                    break
            if down is None:
                break
            node = down
        charnode[v] = node
        rinv.setdefault(node, []).append(v)
        if node.kind == "Q":
            a = b = None
            for i, ch in enumerate(node.children):
                s = span[ch]
                if s[0] <= lo <= s[1]:
                    a = i + 1
                if s[0] <= hi <= s[1]:
                    b = i + 1
            if a is None or b is None or a >= b:
                raise GraphError("internal: bad Q-block for a characteristic node")
            qblock[v] = (a, b)
    return LabeledPQTree(
        g,
        t,
        frontier,
        tuple(runs),
        charnode,
        {node: tuple(sorted(vs)) for node, vs in rinv.items()},
        qblock,
        span,
    )


def build_labeled(g: IntervalGraph) -> LabeledPQTree:
    return label_pqtree(g, build_pqtree(g))


# ---------------------------------------------------------------------------
# Canonical codes (Theorem 1 realization) and isomorphism extraction.


@dataclass(frozen=True)
class CanonicalCode:
    code: tuple[int, ...]


def _q_label_tuples(lt: LabeledPQTree, q: PQNode, reverse: bool) -> list[int]:
    m = len(q.children)
    out = []
    for (a, b), vs in lt.q_classes(q).items():
        if reverse:
            a, b = m - b + 1, m - a + 1
        out.append((a, b, len(vs)))
    flat: list[int] = [len(out)]
    for a, b, c in sorted(out):
        flat += [a, b, c]
    return flat


def _node_code(lt: LabeledPQTree, node: PQNode, memo: dict) -> tuple[int, ...]:
    got = memo.get(node)
    if got is not None:
        return got[0]
    if node.kind == "L":
        code = (0, len(lt.rinv_of(node)))
        memo[node] = (code, None)
        return code
    child_codes = [_node_code(lt, ch, memo) for ch in node.children]
    if node.kind == "P":
        flat = [1, len(lt.rinv_of(node)), len(node.children)]
        for c in sorted(child_codes):
            flat.append(len(c))
            flat.extend(c)
        code = tuple(flat)
        memo[node] = (code, None)
        return code

    def flatten(codes: list[tuple[int, ...]], labels: list[int]) -> list[int]:
        flat = list(labels)
        for c in codes:
            flat.append(len(c))
            flat.extend(c)
        return flat

    fwd = flatten(child_codes, _q_label_tuples(lt, node, reverse=False))
    rev = flatten(list(reversed(child_codes)), _q_label_tuples(lt, node, reverse=True))
    if rev < fwd:
        code = tuple([2, len(node.children)] + rev)
        memo[node] = (code, "rev")
    else:
        code = tuple([2, len(node.children)] + fwd)
        memo[node] = (code, "fwd")
    return code


def canonical_code(lt: LabeledPQTree) -> CanonicalCode:
    """Code equal across labeled PQ-trees exactly when they are equivalent."""
    if lt.tree.root is None:
        return CanonicalCode(())
    memo: dict = {}
    return CanonicalCode(_node_code(lt, lt.tree.root, memo))


def graph_code(g: IntervalGraph) -> CanonicalCode:
    """Canonical code of a graph; equal codes characterize isomorphism."""
    if g.n == 0:
        return CanonicalCode(())
    return canonical_code(build_labeled(g))


def are_isomorphic(g1: IntervalGraph, g2: IntervalGraph) -> bool:
    if g1.n != g2.n or g1.edge_count() != g2.edge_count():
        return False
    return graph_code(g1) == graph_code(g2)


def _pair_nodes(
    lt1: LabeledPQTree,
    n1: PQNode,
    memo1: dict,
    lt2: LabeledPQTree,
    n2: PQNode,
    memo2: dict,
    out: dict[int, int],
) -> None:
    code1 = memo1[n1][0]
    code2 = memo2[n2][0]
    if code1 != code2:
        raise NotIsomorphicError("internal: aligned nodes disagree")
    if n1.kind != "Q":
        for v, w in zip(lt1.rinv_of(n1), lt2.rinv_of(n2)):
            out[v] = w
        if n1.kind == "P":
            ch1 = sorted(n1.children, key=lambda c: memo1[c][0])
            ch2 = sorted(n2.children, key=lambda c: memo2[c][0])
            for c1, c2 in zip(ch1, ch2):
                _pair_nodes(lt1, c1, memo1, lt2, c2, memo2, out)
        return
    m = len(n1.children)
    rev1 = memo1[n1][1] == "rev"
    rev2 = memo2[n2][1] == "rev"
    ch1 = list(reversed(n1.children)) if rev1 else list(n1.children)
    ch2 = list(reversed(n2.children)) if rev2 else list(n2.children)
    for c1, c2 in zip(ch1, ch2):
        _pair_nodes(lt1, c1, memo1, lt2, c2, memo2, out)

    def oriented_classes(lt, q, rev):
        res = {}
        for (a, b), vs in lt.q_classes(q).items():
            if rev:
                a, b = m - b + 1, m - a + 1
            res[(a, b)] = vs
        return res

    cls1 = oriented_classes(lt1, n1, rev1)
    cls2 = oriented_classes(lt2, n2, rev2)
    if set(cls1) != set(cls2):
        raise NotIsomorphicError("internal: label classes disagree")
    for blk, vs in cls1.items():
        for v, w in zip(vs, cls2[blk]):
            out[v] = w


def verify_isomorphism(g1: IntervalGraph, g2: IntervalGraph, phi: dict[int, int]) -> bool:
    """Check that phi is a bijective adjacency-preserving map g1 -> g2."""
    if len(phi) != g1.n or len(set(phi.values())) != g1.n or g2.n != g1.n:
        return False
    for u in range(g1.n):
        image = 0
        for w in bits(g1.adj[u]):
            image |= 1 << phi[w]
        if image != g2.adj[phi[u]]:
            return False
    return True


def extract_isomorphism(g1: IntervalGraph, g2: IntervalGraph) -> dict[int, int]:
    """An explicit isomorphism g1 -> g2, verified before returning."""
    if g1.n == 0 and g2.n == 0:
        return {}
    if g1.n != g2.n:
        raise NotIsomorphicError("vertex counts differ")
    lt1 = build_labeled(g1)
    lt2 = build_labeled(g2)
    memo1: dict = {}
    memo2: dict = {}
    if _node_code(lt1, lt1.tree.root, memo1) != _node_code(lt2, lt2.tree.root, memo2):
        raise NotIsomorphicError("canonical codes differ")
    phi: dict[int, int] = {}
    _pair_nodes(lt1, lt1.tree.root, memo1, lt2, lt2.tree.root, memo2, phi)
    if not verify_isomorphism(g1, g2, phi):
        raise NotIsomorphicError("internal: extracted map failed verification")
    return phi


# ---------------------------------------------------------------------------
# Equivalence moves and the printable dump.


def reverse_q_children(lt: LabeledPQTree, q: PQNode) -> LabeledPQTree:
    """Equivalent labeled tree with q's children reversed (labels adjusted)."""
    if q.kind != "Q":
        raise GraphError("reverse_q_children on a non-Q node")

    def rebuild(node: PQNode) -> PQNode:
        if node.kind == "L":
            return node
        children = tuple(rebuild(c) for c in node.children)
        if node is q:
            children = tuple(reversed(children))
        return PQNode(node.kind, children, node.clique)

    new_tree = PQTree(rebuild(lt.tree.root), lt.tree.cliques)
    return label_pqtree(lt.graph, new_tree)


def format_tree(lt: LabeledPQTree, canonical: bool = True) -> str:
    """Nested one-node-per-line dump, in canonical orientation by default."""
    if lt.tree.root is None:
        return "(empty)\n"
    memo: dict = {}
    if canonical:
        _node_code(lt, lt.tree.root, memo)
    lines: list[str] = []

    def clique_str(ci: int) -> str:
        return "{" + ",".join(str(v) for v in bits(lt.tree.cliques[ci])) + "}"

    def walk(node: PQNode, depth: int) -> None:
        pad = "  " * depth
        if node.kind == "L":
            lines.append(f"{pad}L:{clique_str(node.clique)} |R|={len(lt.rinv_of(node))}")
            return
        children = list(node.children)
        if node.kind == "P":
            lines.append(f"{pad}P |R|={len(lt.rinv_of(node))}")
            if canonical:
                children.sort(key=lambda c: memo[c][0])
        else:
            m = len(node.children)
            rev = canonical and memo[node][1] == "rev"
            blocks = []
            for (a, b), vs in lt.q_classes(node).items():
                if rev:
                    a, b = m - b + 1, m - a + 1
                blocks.append((a, b, len(vs)))
            txt = " ".join(f"[{a},{b}]:{c}" for a, b, c in sorted(blocks))
            lines.append(f"{pad}Q {txt}")
            if rev:
                children.reverse()
        for ch in children:
            walk(ch, depth + 1)

    walk(lt.tree.root, 0)
    return "\n".join(lines) + "\n"
