"""Bounded-search-tree solver for cleaning one interval graph into another.

Given interval graphs G' and G with k = |V(G)| - |V(G')|, decide whether k
vertices can be deleted from G so the rest is isomorphic to G', and
produce the deletion set.  The engine is the branching procedure behind
``necessary_set``: every run either shrinks the instance (reduced input),
splits off a smaller parameter (independent subproblem), pins down a small
set of vertices at least one of which must be deleted (necessary set),
rejects, or terminates with a full verified solution.

The hard case, when both PQ-tree roots are Q-nodes and G's root is wider,
is driven by fragmentations: paired tilings of the two root child ranges
that bracket where each child block of G' may land, refined by branching
on block guesses until ten structural properties hold, after which the
right-alignment saturation and the final class-by-class mapping either
build a solution or expose the branch as wrong.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .graphs import (
    GraphError,
    IntervalGraph,
    bits,
    connected_components,
    induced_subgraph,
    mask_of,
    universal_vertices,
)
from .modules import occurrences_as_complete_module, occurrences_as_short_module
from .pqtree import (
    LabeledPQTree,
    NotIsomorphicError,
    are_isomorphic,
    build_labeled,
    extract_isomorphism,
    graph_code,
)


class CleanerError(GraphError):
    """Internal invariant broken; indicates a bug, not an unsolvable input."""


# ---------------------------------------------------------------------------
# Instances, solutions, outcome shapes.


@dataclass(frozen=True)
class CleaningInstance:
    gprime: IntervalGraph
    g: IntervalGraph

    @property
    def k(self) -> int:
        return self.g.n - self.gprime.n


@dataclass(frozen=True)
class Solution:
    deleted: frozenset[int]


@dataclass(frozen=True)
class NecessarySetResult:
    vertices: frozenset[int]


@dataclass(frozen=True)
class RejectResult:
    reason: str = ""


@dataclass(frozen=True)
class DirectSolution:
    deleted: frozenset[int]


@dataclass(frozen=True)
class SubInstance:
    """A derived instance plus maps from its dense ids back to the parent."""

    instance: CleaningInstance
    gp_ids: tuple[int, ...]
    g_ids: tuple[int, ...]


@dataclass(frozen=True)
class ReducedInput(SubInstance):
    pass


@dataclass(frozen=True)
class IndependentSubproblem(SubInstance):
    pass


@dataclass(frozen=True)
class Branches:
    results: tuple


class Trace:
    """Structured event log; doubles as the instrumentation switch."""

    def __init__(self) -> None:
        self.events: list[dict] = []

    def emit(self, event: str, depth: int = 0, rule: str = "", branch: int = -1, **payload) -> None:
        self.events.append(
            {"event": event, "depth": depth, "rule": rule, "branch": branch, "payload": payload}
        )


def _sub_instance(
    gp: IntervalGraph, g: IntervalGraph, gp_keep, g_keep, cls=SubInstance
) -> SubInstance:
    gp_ids = tuple(sorted(gp_keep))
    g_ids = tuple(sorted(g_keep))
    inst = CleaningInstance(induced_subgraph(gp, gp_ids), induced_subgraph(g, g_ids))
    return cls(inst, gp_ids, g_ids)


def _check_nset(vertices, k) -> NecessarySetResult:
    res = NecessarySetResult(frozenset(vertices))
    if not res.vertices or len(res.vertices) > 2 * k + 1:
        raise CleanerError(f"necessary set size {len(res.vertices)} out of [1, {2*k+1}]")
    return res


def _check_subproblem(sub: IndependentSubproblem, k: int) -> IndependentSubproblem:
    if not 1 <= sub.instance.k <= k - 1:
        raise CleanerError(f"independent subproblem parameter {sub.instance.k}")
    return sub


# ---------------------------------------------------------------------------
# Oriented access to a Q-node root.


class RootView:
    """Root Q-node of a labeled tree with child indices 1..m, optionally
    viewed with the children reversed (labels adjusted accordingly)."""

    def __init__(self, lt: LabeledPQTree, reverse: bool):
        root = lt.tree.root
        if root is None or root.kind != "Q":
            raise CleanerError("RootView needs a Q-node root")
        self.lt = lt
        self.graph = lt.graph
        self.reverse = reverse
        self.m = len(root.children)
        self._root = root
        self._children = tuple(reversed(root.children)) if reverse else root.children
        self.classes: dict[tuple[int, int], tuple[int, ...]] = {}
        for (a, b), vs in lt.q_classes(root).items():
            if reverse:
                a, b = self.m - b + 1, self.m - a + 1
            self.classes[(a, b)] = vs
        self.block_of: dict[int, tuple[int, int]] = {}
        for blk, vs in self.classes.items():
            for v in vs:
                self.block_of[v] = blk
        self._x_masks = [0] * (self.m + 1)
        left_idx = {}
        right_idx = {}
        for i in range(1, self.m + 1):
            mask = lt.subtree_mask(self._children[i - 1])
            self._x_masks[i] = mask
            for v in bits(mask):
                left_idx[v] = right_idx[v] = i
        for v, (a, b) in self.block_of.items():
            left_idx[v] = a
            right_idx[v] = b
        n = self.graph.n
        cnt_r = [0] * (self.m + 2)
        cnt_l = [0] * (self.m + 2)
        for v in range(n):
            cnt_r[right_idx[v]] += 1
            cnt_l[left_idx[v]] += 1
        self._w_prefix = [0] * (self.m + 2)  # vertices with right index <= i
        acc = 0
        for i in range(self.m + 1):
            acc += cnt_r[i]
            self._w_prefix[i] = acc
        self._w_suffix = [0] * (self.m + 3)  # vertices with left index >= i
        acc = 0
        for i in range(self.m + 1, 0, -1):
            acc += cnt_l[i]
            self._w_suffix[i] = acc
        self._starts: dict[int, list[int]] = {}
        self._ends: dict[int, list[int]] = {}
        for (a, b), vs in self.classes.items():
            self._starts.setdefault(a, []).extend(vs)
            self._ends.setdefault(b, []).extend(vs)
        for i, vs in self._starts.items():
            vs.sort(key=lambda v: (self.block_of[v][1], v))
        for i, vs in self._ends.items():
            vs.sort(key=lambda v: (self.block_of[v][0], v))
        self._child_graphs: dict[int, IntervalGraph] = {}
        self._child_codes: dict[int, tuple] = {}

    def x_mask(self, i: int) -> int:
        return self._x_masks[i]

    def x_vertices(self, i: int) -> tuple[int, ...]:
        return tuple(bits(self._x_masks[i]))

    def x_size(self, i: int) -> int:
        return self._x_masks[i].bit_count()

    def m_plus(self, i: int) -> list[int]:
        """Root vertices starting at child i, ranked by right end then id."""
        return self._starts.get(i, [])

    def m_minus(self, i: int) -> list[int]:
        """Root vertices ending at child i, ranked by left end then id."""
        return self._ends.get(i, [])

    def l_class(self, a: int, b: int) -> tuple[int, ...]:
        return self.classes.get((a, b), ())

    def l_count(self, a: int, b: int) -> int:
        return len(self.classes.get((a, b), ()))

    def w_to(self, i: int) -> int:
        """|W(1, i)|: vertices whose block lies inside [1, i]."""
        return self._w_prefix[i]

    def w_from(self, i: int) -> int:
        """|W(i, m)|: vertices whose block lies inside [i, m]."""
        return self._w_suffix[i]

    def child_graph(self, i: int) -> IntervalGraph:
        got = self._child_graphs.get(i)
        if got is None:
            got = induced_subgraph(self.graph, self.x_vertices(i))
            self._child_graphs[i] = got
        return got

    def child_code(self, i: int):
        got = self._child_codes.get(i)
        if got is None:
            got = graph_code(self.child_graph(i))
            self._child_codes[i] = got
        return got

    def label_map(self) -> dict[tuple[int, int], int]:
        return {blk: len(vs) for blk, vs in self.classes.items()}


# ---------------------------------------------------------------------------
# Fragmentations.


@dataclass(frozen=True)
class Fragment:
    src: tuple[int, int]  # block in [1, m']
    tgt: tuple[int, int]  # block in [1, m]

    @property
    def sigma(self) -> int:
        return (self.tgt[1] - self.tgt[0]) - (self.src[1] - self.src[0])

    @property
    def delta(self) -> int:
        return self.tgt[0] - self.src[0]


@dataclass(frozen=True)
class BlockGuess:
    j: int
    block: tuple[int, int]


class AnnotatedFragmentation:
    """Tiling of [1,m'] and [1,m] into fragments plus the important set U."""

    def __init__(self, fragments: tuple[Fragment, ...], important: frozenset[int]):
        self.fragments = fragments
        self.important = important
        self.m_src = fragments[-1].src[1]
        self.m_tgt = fragments[-1].tgt[1]
        self._findex = [0] * (self.m_src + 1)
        for h, f in enumerate(fragments):
            for j in range(f.src[0], f.src[1] + 1):
                self._findex[j] = h

    @staticmethod
    def initial(m_src: int, m_tgt: int) -> "AnnotatedFragmentation":
        return AnnotatedFragmentation(
            (Fragment((1, m_src), (1, m_tgt)),), frozenset()
        )

    def fragment_pos(self, j: int) -> int:
        return self._findex[j]

    def fragment_of(self, j: int) -> Fragment:
        return self.fragments[self._findex[j]]

    def jl(self, j: int) -> int:
        return j + self.fragment_of(j).delta

    def jr(self, j: int) -> int:
        f = self.fragment_of(j)
        return j + f.delta + f.sigma

    def trivial(self, j: int) -> bool:
        return self.fragment_of(j).sigma == 0

    def trivial_indices(self) -> frozenset[int]:
        out = []
        for f in self.fragments:
            if f.sigma == 0:
                out.extend(range(f.src[0], f.src[1] + 1))
        return frozenset(out)

    def nontrivial_count(self) -> int:
        return sum(1 for f in self.fragments if f.sigma > 0)

    def last_indices(self) -> frozenset[int]:
        """Z: last source index of each non-trivial fragment."""
        return frozenset(f.src[1] for f in self.fragments if f.sigma > 0)

    def reversed(self) -> "AnnotatedFragmentation":
        ms, mt = self.m_src, self.m_tgt
        frags = tuple(
            Fragment(
                (ms - f.src[1] + 1, ms - f.src[0] + 1),
                (mt - f.tgt[1] + 1, mt - f.tgt[0] + 1),
            )
            for f in reversed(self.fragments)
        )
        return AnnotatedFragmentation(frags, frozenset(ms - u + 1 for u in self.important))

    def _replace(self, pos: int, parts: tuple[Fragment, ...], important) -> "AnnotatedFragmentation":
        frags = self.fragments[:pos] + parts + self.fragments[pos + 1 :]
        return AnnotatedFragmentation(frags, important)

    def right_split(self, j: int, important) -> "AnnotatedFragmentation":
        """Split j's fragment so that j starts a trivial tail fragment."""
        pos = self.fragment_pos(j)
        f = self.fragments[pos]
        if j <= f.src[0] or f.sigma == 0:
            raise CleanerError("right split needs a non-extremal index of a non-trivial fragment")
        jr = self.jr(j)
        parts = (
            Fragment((f.src[0], j - 1), (f.tgt[0], jr - 1)),
            Fragment((j, f.src[1]), (jr, f.tgt[1])),
        )
        return self._replace(pos, parts, important)

    def skew_split(self, j: int, i: int, important) -> "AnnotatedFragmentation":
        """Split j's fragment at a skew image i; both parts are non-trivial."""
        pos = self.fragment_pos(j)
        f = self.fragments[pos]
        parts = (
            Fragment((f.src[0], j - 1), (f.tgt[0], i - 1)),
            Fragment((j, f.src[1]), (i, f.tgt[1])),
        )
        if parts[0].sigma <= 0 or parts[1].sigma <= 0:
            raise CleanerError("skew split must produce two non-trivial fragments")
        return self._replace(pos, parts, important)


def branch_on_block(
    j: int, af: AnnotatedFragmentation, view_g: RootView, view_gp: RootView, k: int
) -> list[BlockGuess]:
    """All block guesses for the image of index j allowed by the count windows."""
    jl, jr = af.jl(j), af.jr(j)
    lo_w = view_gp.w_from(j)
    alphas = [a for a in range(jl, jr + 1) if lo_w <= view_g.w_from(a) <= lo_w + k]
    hi_w = view_gp.w_to(j)
    betas = [b for b in range(jl, jr + 1) if hi_w <= view_g.w_to(b) <= hi_w + k]
    out = [BlockGuess(j, (a, b)) for a in alphas for b in betas if a <= b]
    if len(out) > (k + 1) ** 2:
        raise CleanerError("block guess window exceeded (k+1)^2")
    return out


# ---------------------------------------------------------------------------
# Property evaluation for one orientation of (trees, fragmentation).


class PropertyEval:
    """Checks properties 1..10 of an annotated fragmentation.

    ``important`` is None when evaluating the reversed instance, where
    property 10 is not checked.
    """

    def __init__(
        self,
        view_g: RootView,
        view_gp: RootView,
        af: AnnotatedFragmentation,
        k: int,
        important: frozenset[int] | None,
    ):
        self.vg = view_g
        self.vgp = view_gp
        self.af = af
        self.k = k
        self.important = important
        self._lrx: dict[tuple[int, int], tuple] = {}

    # -- pair sets ---------------------------------------------------------

    def pairs_plus(self, j: int, i: int) -> list[tuple[int, int]]:
        return list(zip(self.vgp.m_plus(j), self.vg.m_plus(i)))

    def pairs_minus(self, j: int, i: int) -> list[tuple[int, int]]:
        return list(zip(self.vgp.m_minus(j), self.vg.m_minus(i)))

    # -- L/R/X sets per non-trivial fragment pair ---------------------------

    def lrx(self, pf: int, ph: int):
        """(L, R, X) vertex records for fragments at positions pf < ph.

        Records are (start_y, end_j, vertex) for root vertices of G' that
        start in the first and end in the second fragment and have a
        rank-partner whose left end falls inside the first fragment's
        target window.
        """
        got = self._lrx.get((pf, ph))
        if got is not None:
            return got
        af = self.af
        F = af.fragments[pf]
        H = af.fragments[ph]
        lsets: list[tuple[int, int, int]] = []
        rsets: list[tuple[int, int, int]] = []
        xsets: list[tuple[int, int, int]] = []
        for j in range(H.src[0], H.src[1] + 1):
            partners = self.pairs_minus(j, af.jl(j))
            for v, w in partners:
                y = self.vgp.block_of[v][0]
                if not F.src[0] <= y <= F.src[1]:
                    continue
                wl = self.vg.block_of[w][0]
                yl, yr = af.jl(y), af.jr(y)
                if not yl <= wl <= yr:
                    continue
                rec = (y, j, v)
                if wl == yl:
                    lsets.append(rec)
                elif wl == yr:
                    rsets.append(rec)
                else:
                    xsets.append(rec)
        got = (lsets, rsets, xsets)
        self._lrx[(pf, ph)] = got
        return got

    def _nontrivial_pairs(self) -> list[tuple[int, int]]:
        nt = [h for h, f in enumerate(self.af.fragments) if f.sigma > 0]
        return [(a, b) for ai, a in enumerate(nt) for b in nt[ai + 1 :]]

    # -- the ten properties --------------------------------------------------

    def check(self, ell: int, j: int):
        """Returns (violated, witness) for property ``ell`` at index ``j``."""
        af = self.af
        vg, vgp = self.vg, self.vgp
        jl = af.jl(j)
        if ell == 1:
            return (vgp.child_code(j) != vg.child_code(jl), None)
        if ell == 2:
            for src, tgt in (
                (len(vgp.m_plus(j)), len(vg.m_plus(jl))),
                (len(vgp.m_minus(j)), len(vg.m_minus(jl))),
            ):
                if not src <= tgt <= src + self.k:
                    return (True, None)
            return (False, None)
        if af.trivial(j):
            return (False, None)
        if ell == 3:
            if len(vgp.m_plus(j)) != len(vg.m_plus(jl)):
                return (True, "plus")
            if len(vgp.m_minus(j)) != len(vg.m_minus(jl)):
                return (True, "minus")
            return (False, None)
        if ell == 4:
            f = af.fragment_of(j)
            for y in range(f.src[0], j):
                if vgp.l_count(y, j) != vg.l_count(af.jl(y), jl):
                    return (True, y)
            return (False, None)
        if ell in (5, 9):
            exact = ell == 9
            for v, w in self.pairs_plus(j, jl):
                y = vgp.block_of[v][1]
                if af.trivial(y):
                    continue
                wr = vg.block_of[w][1]
                bad = wr != af.jl(y) if exact else not af.jl(y) <= wr <= af.jr(y)
                if bad:
                    return (True, None)
            for v, w in self.pairs_minus(j, jl):
                y = vgp.block_of[v][0]
                if af.trivial(y):
                    continue
                wl = vg.block_of[w][0]
                bad = wl != af.jl(y) if exact else not af.jl(y) <= wl <= af.jr(y)
                if bad:
                    return (True, None)
            return (False, None)
        if ell == 6:
            ph = af.fragment_pos(j)
            best = None
            for pf in range(ph):
                if af.fragments[pf].sigma == 0:
                    continue
                for y, jj, v in self.lrx(pf, ph)[2]:
                    if jj == j and (best is None or (y, v) < best):
                        best = (y, v)
            return (best is not None, best and best[0])
        if ell == 7:
            ph = af.fragment_pos(j)
            best = None
            for pf in range(ph):
                if af.fragments[pf].sigma == 0:
                    continue
                lsets, rsets, _ = self.lrx(pf, ph)
                min_end_l: dict[int, int] = {}
                for y, jj, _v in lsets:
                    min_end_l[y] = min(min_end_l.get(y, jj), jj)
                min_end_r: dict[int, int] = {}
                for y, jj, _v in rsets:
                    min_end_r[y] = min(min_end_r.get(y, jj), jj)
                for y1, j1 in min_end_r.items():
                    for y2, j2 in min_end_l.items():
                        if y1 <= y2 and max(j1, j2) <= j:
                            cand = (y1, y2)
                            if best is None or cand < best:
                                best = cand
            return (best is not None, best)
        if ell == 8:
            ph = af.fragment_pos(j)
            for pf in range(ph):
                if af.fragments[pf].sigma == 0:
                    continue
                lsets, rsets, _ = self.lrx(pf, ph)
                if not rsets:
                    continue
                y_r = min(y for y, _j, _v in rsets)
                j_r = min(jj for y, jj, _v in rsets if y == y_r)
                if not lsets:
                    crit = j_r
                else:
                    y_l = max(y for y, _j, _v in lsets)
                    j_l = min(jj for y, jj, _v in lsets if y == y_l)
                    crit = max(j_l, j_r)
                if crit == j:
                    return (True, (pf, ph))
            return (False, None)
        if ell == 10:
            if self.important is None:
                return (False, None)
            for u in sorted(self.important):
                if u > j:
                    ok = vgp.l_count(j, u) == vg.l_count(jl, af.jl(u))
                else:
                    ok = vgp.l_count(u, j) == vg.l_count(af.jl(u), jl)
                if not ok:
                    return (True, u)
            return (False, None)
        raise CleanerError(f"no property {ell}")

    def first_violation(self, ell: int):
        for j in range(1, self.af.m_src + 1):
            violated, witness = self.check(ell, j)
            if violated:
                return (j, witness)
        return None

    def fragment_ok(self, pos: int, ell: int) -> bool:
        f = self.af.fragments[pos]
        return not any(
            self.check(ell, j)[0] for j in range(f.src[0], f.src[1] + 1)
        )


def fragmentation_measure(
    view_g: RootView, view_gp: RootView, af: AnnotatedFragmentation, k: int
) -> int:
    """Count of (non-trivial fragment, property<=9) pairs currently satisfied,
    summed over both orientations; reversal-invariant by construction."""
    total = 0
    ev = PropertyEval(view_g, view_gp, af, k, important=None)
    rv_g = RootView(view_g.lt, not view_g.reverse)
    rv_gp = RootView(view_gp.lt, not view_gp.reverse)
    ev_rev = PropertyEval(rv_g, rv_gp, af.reversed(), k, important=None)
    for evx, afx in ((ev, af), (ev_rev, af.reversed())):
        for pos, f in enumerate(afx.fragments):
            if f.sigma == 0:
                continue
            for ell in range(1, 10):
                if evx.fragment_ok(pos, ell):
                    total += 1
    return total


# ---------------------------------------------------------------------------
# Q-Q case driver.


class QQContext:
    def __init__(self, inst: CleaningInstance, trace: Trace | None,
                 lt_g: LabeledPQTree | None = None, lt_gp: LabeledPQTree | None = None):
        self.inst = inst
        self.g = inst.g
        self.gp = inst.gprime
        self.k = inst.k
        self.trace = trace
        lt_g = lt_g if lt_g is not None else build_labeled(self.g)
        lt_gp = lt_gp if lt_gp is not None else build_labeled(self.gp)
        self.views_g = {False: RootView(lt_g, False), True: RootView(lt_g, True)}
        self.views_gp = {False: RootView(lt_gp, False), True: RootView(lt_gp, True)}

    def views(self, g_rev: bool, gp_rev: bool) -> tuple[RootView, RootView]:
        return self.views_g[g_rev], self.views_gp[gp_rev]


@dataclass
class QQState:
    g_rev: bool
    gp_rev: bool
    af: AnnotatedFragmentation
    depth: int = 0


def _depth_bound(k: int) -> int:
    return 8 * k**3 + 76 * k**2


def _first_violation_both(ctx: QQContext, state: QQState):
    """Minimal violated property over both orientations; primary wins ties.

    Returns (state, ell, j, witness, eval) where the state may have been
    instance-reversed so the violation lies in its primary orientation.
    """
    vg, vgp = ctx.views(state.g_rev, state.gp_rev)
    ev_p = PropertyEval(vg, vgp, state.af, ctx.k, important=state.af.important)
    rg, rgp = ctx.views(not state.g_rev, not state.gp_rev)
    ev_r = PropertyEval(rg, rgp, state.af.reversed(), ctx.k, important=None)
    for ell in range(1, 11):
        hit = ev_p.first_violation(ell)
        if hit is not None:
            return state, ell, hit[0], hit[1], ev_p
        if ell <= 9:
            hit = ev_r.first_violation(ell)
            if hit is not None:
                flipped = QQState(
                    not state.g_rev, not state.gp_rev, state.af.reversed(), state.depth
                )
                return flipped, ell, hit[0], hit[1], ev_r
    return None


def handle_wide(view_g: RootView, j: int, block: tuple[int, int], k: int):
    """Wide index: a 2-element necessary set from a properly crossing witness."""
    alpha, beta = block
    best = None
    for z, (z1, z2) in view_g.block_of.items():
        if z1 < alpha <= z2 < beta or alpha < z1 <= beta < z2:
            cand = (z1, z2, z)
            if best is None or cand < best:
                best = cand
    if best is None:
        return RejectResult("wide index without a crossing root vertex")
    z1, z2, z = best
    if z1 < alpha:
        partner = set(view_g.x_vertices(beta)) | set(view_g.m_plus(beta))
    else:
        partner = set(view_g.x_vertices(alpha)) | set(view_g.m_minus(alpha))
    if not partner:
        raise CleanerError("empty boundary set contradicts PQ-tree structure")
    return _check_nset({z, min(partner)}, k)


def _extremal_nset(view_g: RootView, af: AnnotatedFragmentation, j: int, k: int):
    a = af.jl(af.fragment_of(j).src[0])
    pool = set(view_g.x_vertices(a)) | set(view_g.m_plus(a)) | set(view_g.m_minus(a))
    if not pool:
        raise CleanerError("empty boundary set contradicts PQ-tree structure")
    return _check_nset({min(pool)}, k)


def handle_skew_or_right_aligned(
    view_g: RootView,
    af: AnnotatedFragmentation,
    j: int,
    image: int,
    ell: int | None,
    k: int,
):
    """Dispatch a single-index guess that is not left-aligned.

    Returns a NecessarySetResult for extremal indices, otherwise the
    updated fragmentation.
    """
    f = af.fragment_of(j)
    if j == f.src[0]:
        return _extremal_nset(view_g, af, j, k)
    if image == af.jr(j):
        if ell is None or ell <= 9:
            nxt = af.right_split(j, frozenset())
            return AnnotatedFragmentation(nxt.fragments, nxt.trivial_indices())
        return af.right_split(j, af.important)
    nxt = af.skew_split(j, image, frozenset())
    return AnnotatedFragmentation(nxt.fragments, nxt.trivial_indices())


def _short_gap_nset(
    view_g: RootView,
    view_gp: RootView,
    af: AnnotatedFragmentation,
    src: tuple[int, int],
    tgt: tuple[int, int],
    k: int,
):
    """Necessary set of |B+(src)|+1 start-boundary vertices (Lemma on short gaps)."""
    need = 1
    for j in range(src[0], src[1] + 1):
        need += len(view_gp.m_plus(j)) + view_gp.x_size(j)
    pool: list[int] = []
    for i in range(tgt[0], tgt[1] + 1):
        pool.extend(view_g.m_plus(i))
        pool.extend(view_g.x_vertices(i))
    if need > 2 * k + 1 or need > len(pool):
        return RejectResult("short-gap bound violated")
    return _check_nset(sorted(pool)[:need], k)


def handle_left_aligned(
    ctx: QQContext, state: QQState, ev: PropertyEval, ell: int, j: int, witness
):
    """Left-aligned guess for the first index violating property ``ell``.

    Returns a terminal branch result, or ("escalate", y, kinds) when the
    case analysis exposes another index known to be wide or skew.
    """
    af = state.af
    vg, vgp = ev.vg, ev.vgp
    k = ctx.k
    jl = af.jl(j)
    if ell == 1:
        xp = vgp.x_vertices(j)
        xg = vg.x_vertices(jl)
        param = len(xg) - len(xp)
        if not 1 <= param <= k - 1:
            return RejectResult("child subproblem parameter out of range")
        return _check_subproblem(
            _sub_instance(ctx.gp, ctx.g, xp, xg, IndependentSubproblem), k
        )
    if ell in (2, 5, 9):
        return RejectResult(f"property {ell} violation is unsatisfiable")
    if ell == 3:
        for side in ("plus", "minus"):
            src = vgp.m_plus(j) if side == "plus" else vgp.m_minus(j)
            tgt = vg.m_plus(jl) if side == "plus" else vg.m_minus(jl)
            if len(src) == len(tgt):
                continue
            if len(tgt) < len(src):
                return RejectResult("boundary class shrank")
            if len(src) > k:
                return RejectResult("oversized boundary class cannot survive")
            return _check_nset(sorted(tgt)[: len(src) + 1], k)
        raise CleanerError("property 3 witness vanished")
    if ell == 4:
        y = witness
        cp = vgp.l_count(y, j)
        tgt = vg.l_class(af.jl(y), jl)
        if cp > len(tgt):
            return RejectResult("label class shrank")
        return _check_nset({min(tgt)}, k)
    if ell == 6:
        return ("escalate", witness, ("wide", "skew"))
    if ell == 7:
        y1, y2 = witness
        if y1 < y2:
            return RejectResult("conflicting boundary orders")
        return ("escalate", y1, ("wide-full",))
    if ell == 8:
        pf, ph = witness
        lsets, rsets, _ = ev.lrx(pf, ph)
        F = af.fragments[pf]
        y_r = min(y for y, _j, _v in rsets)
        if y_r < F.src[0] + F.sigma:
            src = (F.src[0], y_r)
        else:
            if not lsets:
                return RejectResult("missing left witness for an LR-critical index")
            y_l = max(y for y, _j, _v in lsets)
            if not y_l < y_r:
                return RejectResult("left witness does not precede right witness")
            src = (y_l, y_r)
        tgt = (af.jl(src[0]), af.jr(src[1]))
        return _short_gap_nset(vg, vgp, af, src, tgt, k)
    if ell == 10:
        u = witness
        a, b = (j, u) if j < u else (u, j)
        cp = vgp.l_count(a, b)
        tgt = vg.l_class(af.jl(a), af.jl(b))
        if cp > len(tgt):
            return RejectResult("label class shrank against an important index")
        return _check_nset({min(tgt)}, k)
    raise CleanerError(f"no left-aligned handler for property {ell}")


def saturate_right_alignment(
    view_g: RootView,
    view_gp: RootView,
    af: AnnotatedFragmentation,
    k: int,
    trace: Trace | None = None,
):
    """Right-alignment saturation over a proper annotated fragmentation.

    Returns (af, W) once no case applies, or a terminal branch result.
    """
    W: set[int] = set()
    while True:
        U = af.important
        trivial = af.trivial_indices()
        Z = af.last_indices()
        m_src = af.m_src
        Y = trivial - U
        NT = frozenset(range(1, m_src + 1)) - trivial
        action = None
        for a in range(1, m_src + 1):
            for b in range(a + 1, m_src + 1):
                cnt = view_gp.l_count(a, b)
                if cnt == 0:
                    continue
                if a in Y and b in NT and b not in Z:
                    action = ("split", b + 1)
                    break
                if a in NT and (b in Y or b in W):
                    if a not in W or a not in Z:
                        action = ("constrain", a)
                        break
            if action:
                break
        if action is None:
            for a in sorted(U):
                for b in sorted(W):
                    if a < b and view_gp.l_count(a, b) != view_g.l_count(
                        af.jl(a), af.jr(b)
                    ):
                        if view_gp.l_count(a, b) > view_g.l_count(af.jl(a), af.jr(b)):
                            return RejectResult("important/right-constrained mismatch")
                        return _check_nset(
                            {min(view_g.l_class(af.jl(a), af.jr(b)))}, k
                        )
            for a in sorted(trivial):
                for b in sorted(trivial):
                    if a < b and view_gp.l_count(a, b) != view_g.l_count(
                        af.jl(a), af.jl(b)
                    ):
                        if view_gp.l_count(a, b) > view_g.l_count(af.jl(a), af.jl(b)):
                            return RejectResult("trivial block mismatch")
                        return _check_nset({min(view_g.l_class(af.jl(a), af.jl(b)))}, k)
            return af, frozenset(W)
        def split(at: int) -> AnnotatedFragmentation:
            nxt = af.right_split(at, af.important)
            if trace is not None:
                mu_before = fragmentation_measure(view_g, view_gp, af, k)
                mu_after = fragmentation_measure(view_g, view_gp, nxt, k)
                trace.emit(
                    "right_split", rule="saturation",
                    mu_before=mu_before, mu_after=mu_after, ell=None,
                    ok=mu_after >= mu_before,
                )
                if mu_after < mu_before:
                    raise CleanerError("measure decreased across a saturation split")
            return nxt

        if action[0] == "split":
            af = split(action[1])
        else:
            a = action[1]
            W.add(a)
            if a not in af.last_indices():
                af = split(a + 1)
            if trace is not None and a not in af.last_indices():
                raise CleanerError("right-constrained index not last in its fragment")


def build_isomorphism(
    ctx: QQContext,
    view_g: RootView,
    view_gp: RootView,
    af: AnnotatedFragmentation,
    W: frozenset[int],
):
    """Assemble the final embedding from a saturated proper fragmentation."""
    trivial = af.trivial_indices()
    U = af.important
    Z = af.last_indices()
    Y = trivial - U
    m_src = af.m_src

    def delta(j: int) -> int:
        return af.jr(j) if j in W else af.jl(j)

    phi: dict[int, int] = {}
    for j in range(1, m_src + 1):
        xp = view_gp.x_vertices(j)
        xg = view_g.x_vertices(delta(j))
        if len(xp) != len(xg):
            return RejectResult("child size mismatch in reconstruction")
        if not xp:
            continue
        try:
            sub = extract_isomorphism(
                induced_subgraph(ctx.gp, xp), induced_subgraph(ctx.g, xg)
            )
        except NotIsomorphicError:
            return RejectResult("child subtree mismatch in reconstruction")
        for a_local, b_local in sub.items():
            phi[xp[a_local]] = xg[b_local]

    def cls(x: int) -> str:
        if x in trivial:
            return "U" if x in U else "Y"
        return "W" if x in W else "N"

    for (a, b), vs in view_gp.classes.items():
        ca, cb = cls(a), cls(b)
        target = None
        if ca == "N":
            target = (af.jl(a), af.jl(b)) if cb in ("N", "U") else None
        elif ca == "W":
            if cb in ("N", "U"):
                target = (af.jl(a), af.jl(b))
            else:
                target = (af.jr(a), af.jr(b))
        elif ca == "U":
            target = (af.jl(a), af.jr(b)) if cb == "W" else (af.jl(a), af.jl(b))
        else:  # Y
            if cb == "N":
                target = (af.jr(a), af.jr(b)) if b in Z else None
            elif cb in ("W", "Y"):
                target = (af.jr(a), af.jr(b))
            else:
                target = (af.jl(a), af.jl(b))
        if target is None:
            return RejectResult("label class forbidden by the saturation cases")
        tgt_vs = view_g.l_class(*target)
        if len(tgt_vs) != len(vs):
            return RejectResult("label class size mismatch in reconstruction")
        for v, w in zip(vs, tgt_vs):
            phi[v] = w

    image = set(phi.values())
    if len(phi) != ctx.gp.n or len(image) != ctx.gp.n:
        return RejectResult("reconstruction is not injective")
    img_mask = mask_of(image)
    for u in range(ctx.gp.n):
        mapped = 0
        for w in bits(ctx.gp.adj[u]):
            mapped |= 1 << phi[w]
        if ctx.g.adj[phi[u]] & img_mask != mapped:
            return RejectResult("reconstruction fails adjacency check")
    deleted = frozenset(range(ctx.g.n)) - frozenset(image)
    if len(deleted) != ctx.k:
        raise CleanerError("solution size disagrees with the parameter")
    return DirectSolution(deleted)


def _guess_results(
    ctx: QQContext, state: QQState, ev: PropertyEval, ell: int | None, j: int, witness,
    kinds: tuple[str, ...] = ("wide", "left", "skew", "right"),
) -> Iterator:
    """Branch over block guesses for index j and dispatch each by type."""
    vg, vgp = ev.vg, ev.vgp
    af = state.af
    guesses = branch_on_block(j, af, vg, vgp, ctx.k)
    if "wide-full" in kinds:
        guesses = [BlockGuess(j, (af.jl(j), af.jr(j)))]
        kinds = ("wide",)
    if ctx.trace is not None:
        ctx.trace.emit(
            "qq_branch", depth=state.depth, rule="qq",
            ell=ell, j=j, guesses=len(guesses), k=ctx.k,
        )
    if not guesses:
        yield RejectResult("no block guess satisfies the count windows")
        return
    jl, jr = af.jl(j), af.jr(j)
    for guess in guesses:
        alpha, beta = guess.block
        if ctx.trace is not None:
            kind = (
                "wide"
                if alpha < beta
                else "left"
                if alpha == jl
                else "right"
                if alpha == jr
                else "skew"
            )
            ctx.trace.emit("qq_guess", depth=state.depth, rule="qq", kind=kind, ell=ell)
        if alpha < beta:
            if "wide" in kinds:
                yield handle_wide(vg, j, guess.block, ctx.k)
            continue
        image = alpha
        if image == jl and image == jr:
            # trivial index: left- and right-aligned at once; treated as left
            if "left" in kinds:
                yield from _left_aligned_results(ctx, state, ev, ell, j, witness)
            continue
        if image == jl:
            if "left" in kinds:
                yield from _left_aligned_results(ctx, state, ev, ell, j, witness)
            continue
        kind = "right" if image == jr else "skew"
        if kind not in kinds:
            continue
        res = handle_skew_or_right_aligned(vg, af, j, image, ell, ctx.k)
        if isinstance(res, AnnotatedFragmentation):
            if ctx.trace is not None and image == jr:
                mu_before = fragmentation_measure(vg, vgp, af, ctx.k)
                mu_after = fragmentation_measure(vg, vgp, res, ctx.k)
                # strictness is only promised while the measured properties
                # (1..9, minus the LR-critical one) drive the split
                ok = mu_after >= mu_before and (ell in (8, 10) or mu_after > mu_before)
                ctx.trace.emit(
                    "right_split", depth=state.depth, rule="qq",
                    mu_before=mu_before, mu_after=mu_after, ell=ell, ok=ok,
                )
                if not ok:
                    raise CleanerError("measure failed to advance across a right split")
            yield from _explore(
                ctx, QQState(state.g_rev, state.gp_rev, res, state.depth + 1)
            )
        else:
            yield res


def _left_aligned_results(
    ctx: QQContext, state: QQState, ev: PropertyEval, ell: int, j: int, witness
) -> Iterator:
    res = handle_left_aligned(ctx, state, ev, ell, j, witness)
    if isinstance(res, tuple) and res and res[0] == "escalate":
        _, y, kinds = res
        yield from _guess_results(ctx, state, ev, None, y, None, kinds)
    else:
        yield res


def _explore(ctx: QQContext, state: QQState) -> Iterator:
    if state.depth > _depth_bound(ctx.k):
        raise CleanerError("fragmentation branching chain exceeded its bound")
    if state.af.nontrivial_count() > 2 * ctx.k:
        if ctx.trace is not None:
            ctx.trace.emit(
                "fragment_overflow", depth=state.depth, rule="qq",
                nontrivial=state.af.nontrivial_count(),
            )
        yield RejectResult("more than 2k non-trivial fragments")
        return
    hit = _first_violation_both(ctx, state)
    if hit is None:
        vg, vgp = ctx.views(state.g_rev, state.gp_rev)
        sat = saturate_right_alignment(vg, vgp, state.af, ctx.k, ctx.trace)
        if not isinstance(sat, tuple):
            yield sat
            return
        af, W = sat
        yield build_isomorphism(ctx, vg, vgp, af, W)
        return
    state, ell, j, witness, ev = hit
    yield from _guess_results(ctx, state, ev, ell, j, witness)


def fragmentation_loop(
    inst: CleaningInstance, reverse_gprime: bool, trace: Trace | None = None
) -> list:
    """All leaf outcomes of the fragmentation search for one orientation."""
    ctx = QQContext(inst, trace)
    vgp = ctx.views_gp[reverse_gprime]
    af = AnnotatedFragmentation.initial(vgp.m, ctx.views_g[False].m)
    return list(_explore(ctx, QQState(False, reverse_gprime, af)))


def qq_check_reduced(
    inst: CleaningInstance, trace: Trace | None = None, ctx: QQContext | None = None
) -> ReducedInput | None:
    """Reduced input when the roots agree except for one child pair."""
    ctx = ctx or QQContext(inst, trace)
    vg = ctx.views_g[False]
    for rev in (False, True):
        vgp = ctx.views_gp[rev]
        if vg.m != vgp.m or vg.label_map() != vgp.label_map():
            continue
        mismatch = [
            i for i in range(1, vg.m + 1) if vg.child_code(i) != vgp.child_code(i)
        ]
        if len(mismatch) == 0:
            raise CleanerError("identical roots with a positive parameter")
        if len(mismatch) == 1:
            i = mismatch[0]
            return _sub_instance(
                ctx.gp, ctx.g, vgp.x_vertices(i), vg.x_vertices(i), ReducedInput
            )
    return None


def qq_case(
    inst: CleaningInstance, trace: Trace | None = None, ctx: QQContext | None = None
) -> Branches:
    """Branch list for the two-Q-roots case (local + both orientations)."""
    ctx = ctx or QQContext(inst, trace)
    vg = ctx.views_g[False]
    k = ctx.k
    results: list = []
    x_first = vg.x_vertices(1)
    x_last = vg.x_vertices(vg.m)
    if not x_first or not x_last:
        raise CleanerError("extreme root children cannot be empty")
    results.append(_check_nset({min(x_first), min(x_last)}, k))
    for rev in (False, True):
        vgp = ctx.views_gp[rev]
        if vg.m < vgp.m:
            results.append(RejectResult("fewer root children in G than in G'"))
            continue
        if vg.m == vgp.m:
            labels_g = vg.label_map()
            labels_gp = vgp.label_map()
            blocks = sorted(set(labels_g) | set(labels_gp))
            shrunk = [b for b in blocks if labels_g.get(b, 0) < labels_gp.get(b, 0)]
            if shrunk:
                results.append(RejectResult("root label class shrank"))
                continue
            grown = [b for b in blocks if labels_g.get(b, 0) > labels_gp.get(b, 0)]
            if grown:
                a, b = grown[0]
                results.append(_check_nset({min(vg.l_class(a, b))}, k))
                continue
            mismatch = [
                i for i in range(1, vg.m + 1) if vg.child_code(i) != vgp.child_code(i)
            ]
            if len(mismatch) < 2:
                raise CleanerError("qq_case reached a reducible configuration")
            i = mismatch[0]
            param = vg.x_size(i) - vgp.x_size(i)
            if 1 <= param <= k - 1:
                results.append(
                    _check_subproblem(
                        _sub_instance(
                            ctx.gp,
                            ctx.g,
                            vgp.x_vertices(i),
                            vg.x_vertices(i),
                            IndependentSubproblem,
                        ),
                        k,
                    )
                )
            else:
                results.append(RejectResult("mismatched child with bad parameter"))
            continue
        af = AnnotatedFragmentation.initial(vgp.m, vg.m)
        results.extend(_explore(ctx, QQState(False, rev, af)))
    return Branches(tuple(results))


# ---------------------------------------------------------------------------
# Reduction rules 1-6.


def _component_graphs(g: IntervalGraph):
    comps = connected_components(g)
    out = []
    for comp in comps:
        ids = tuple(sorted(comp))
        out.append((ids, induced_subgraph(g, ids)))
    return out


def rule_isomorphic_components(inst: CleaningInstance) -> ReducedInput | None:
    """Rule 1: drop a pair of isomorphic components."""
    gp_comps = _component_graphs(inst.gprime)
    g_comps = _component_graphs(inst.g)
    if len(gp_comps) <= 1 and len(g_comps) <= 1:
        return None
    g_codes = [(ids, graph_code(sub)) for ids, sub in g_comps]
    for ids_p, sub_p in gp_comps:
        code_p = graph_code(sub_p)
        for ids_g, code_g in g_codes:
            if code_g == code_p:
                keep_p = sorted(set(range(inst.gprime.n)) - set(ids_p))
                keep_g = sorted(set(range(inst.g.n)) - set(ids_g))
                return _sub_instance(inst.gprime, inst.g, keep_p, keep_g, ReducedInput)
    return None


def rule_many_components(inst: CleaningInstance, trace: Trace | None = None) -> Branches | None:
    """Rule 2: G' has at least 4k+1 components; locate one image component."""
    k = inst.k
    gp_comps = _component_graphs(inst.gprime)
    if len(gp_comps) < 4 * k + 1:
        return None
    by_size = sorted(gp_comps, key=lambda c: (-len(c[0]), c[0][0]))[: 4 * k + 1]
    comp_graphs = [sub for _ids, sub in by_size]
    results: list = []
    seen: set[frozenset[int]] = set()
    for i, target in enumerate(comp_graphs):
        is_clique = target.edge_count() == target.n * (target.n - 1) // 2
        h_short = (k + 1) // 2
        if is_clique:
            occ_g = occurrences_as_short_module(target, inst.g, h_short)
            occ_in = [
                len(occurrences_as_short_module(target, comp_graphs[j], h_short))
                for j in range(i)
            ]
        else:
            occ_g = occurrences_as_complete_module(target, inst.g)
            occ_in = [
                len(occurrences_as_complete_module(target, comp_graphs[j]))
                for j in range(i)
            ]
        if not occ_g:
            continue
        for delta_bits in range(1 << i):
            m_prime = sum(occ_in[j] for j in range(i) if delta_bits >> j & 1)
            if is_clique:
                lo = m_prime - (3 * k * k + 10 * k + 1) // 2 - 1
                hi = m_prime + 2 * k * k + 3 * k + 2
            else:
                lo = m_prime - 4 * k + 1
                hi = m_prime + 4 * k + 1
            for i_star in range(max(1, lo), min(len(occ_g), hi) + 1):
                cand = occ_g[i_star - 1]
                nbhd = 0
                for v in cand:
                    nbhd |= inst.g.adj[v]
                nbhd &= ~mask_of(cand)
                if nbhd == 0:
                    raise CleanerError("module occurrence is a full component after rule 1")
                s = min(bits(nbhd))
                if frozenset({s}) not in seen:
                    seen.add(frozenset({s}))
                    results.append(_check_nset({s}, k))
    if trace is not None:
        trace.emit("rule2", rule="rule2", branches=len(results))
    return Branches(tuple(results))


def rule_disconnected_g(inst: CleaningInstance):
    """Rule 3: reject when G has more than k components, else branch on the
    set of G'-components mapped into one fixed component of G."""
    g_comps = _component_graphs(inst.g)
    if len(g_comps) <= 1:
        return None
    k = inst.k
    if len(g_comps) > k:
        return RejectResult("more components than the parameter allows")
    gp_comps = _component_graphs(inst.gprime)
    ids_k, _sub = g_comps[0]
    results = []
    for pick in range(1 << len(gp_comps)):
        chosen: list[int] = []
        for j in range(len(gp_comps)):
            if pick >> j & 1:
                chosen.extend(gp_comps[j][0])
        param = len(ids_k) - len(chosen)
        if not 1 <= param <= k - 1:
            continue
        results.append(
            _check_subproblem(
                _sub_instance(inst.gprime, inst.g, chosen, ids_k, IndependentSubproblem),
                k,
            )
        )
    return Branches(tuple(results))


def rule_universal_g(inst: CleaningInstance):
    """Rule 4: a universal vertex of G is either forced into the solution or
    cancels against a universal vertex of G'."""
    uni_g = universal_vertices(inst.g)
    if not uni_g:
        return None
    x = min(uni_g)
    uni_gp = universal_vertices(inst.gprime)
    if not uni_gp:
        return _check_nset({x}, inst.k)
    xp = min(uni_gp)
    keep_p = sorted(set(range(inst.gprime.n)) - {xp})
    keep_g = sorted(set(range(inst.g.n)) - {x})
    return _sub_instance(inst.gprime, inst.g, keep_p, keep_g, ReducedInput)


def _right_order_model(g: IntervalGraph, lt: LabeledPQTree | None = None):
    """Vertex interval endpoints: the model when present, else clique runs."""
    if g.model is not None:
        return [(g.model[v].left, g.model[v].right) for v in range(g.n)]
    if lt is None:
        lt = build_labeled(g)
    return [tuple(lt.runs[v]) for v in range(g.n)]


def rule_disconnected_gprime(inst: CleaningInstance) -> Branches | None:
    """Rule 5: G connected, G' not; guess the first component's span."""
    gp_comps = connected_components(inst.gprime)
    if len(gp_comps) <= 1:
        return None
    k = inst.k
    spans = _right_order_model(inst.g)
    order = sorted(range(inst.g.n), key=lambda v: (spans[v][1], v))
    results = []
    seen: set[frozenset[int]] = set()
    for comp in gp_comps:
        for s_q in range(len(comp), len(comp) + k + 1):
            if s_q >= inst.g.n:
                continue
            bmask = mask_of(order[:s_q])
            edge = None
            for x in order[:s_q]:
                outside = inst.g.adj[x] & ~bmask
                if outside:
                    y = min(bits(outside))
                    if edge is None or (x, y) < edge:
                        edge = (x, y)
            if edge is None:
                raise CleanerError("no crossing edge in a connected graph")
            key = frozenset(edge)
            if key not in seen:
                seen.add(key)
                results.append(_check_nset(key, k))
    return Branches(tuple(results))


def rule_universal_gprime(inst: CleaningInstance) -> NecessarySetResult | None:
    """Rule 6: G' has a universal vertex but G does not."""
    if not universal_vertices(inst.gprime):
        return None
    spans = _right_order_model(inst.g)
    a = min(range(inst.g.n), key=lambda v: (spans[v][1], v))
    b = max(range(inst.g.n), key=lambda v: (spans[v][0], -v))
    if a == b:
        raise CleanerError("degenerate span extremes imply a universal vertex")
    return _check_nset({a, b}, inst.k)


# ---------------------------------------------------------------------------
# Algorithm A and the drivers.


def algorithm_a(inst: CleaningInstance, trace: Trace | None = None):
    """One run of the branching engine: first applicable rule, else the Q-Q case."""
    if inst.k < 1:
        raise CleanerError("algorithm A needs k >= 1")
    out = rule_isomorphic_components(inst)
    if out is not None:
        if trace is not None:
            trace.emit("reduced", rule="rule1")
        return out
    out = rule_many_components(inst, trace)
    if out is not None:
        return out
    out = rule_disconnected_g(inst)
    if out is not None:
        if trace is not None:
            trace.emit("rule3", rule="rule3",
                       branches=0 if isinstance(out, RejectResult) else len(out.results))
        return out
    out = rule_universal_g(inst)
    if out is not None:
        if trace is not None:
            trace.emit("rule4", rule="rule4")
        return out if isinstance(out, ReducedInput) else Branches((out,))
    out = rule_disconnected_gprime(inst)
    if out is not None:
        if trace is not None:
            trace.emit("rule5", rule="rule5", branches=len(out.results))
        return out
    out = rule_universal_gprime(inst)
    if out is not None:
        if trace is not None:
            trace.emit("rule6", rule="rule6")
        return Branches((out,))
    ctx = QQContext(inst, trace)
    reduced = qq_check_reduced(inst, trace, ctx)
    if reduced is not None:
        if trace is not None:
            trace.emit("reduced", rule="qq")
        return reduced
    return qq_case(inst, trace, ctx)


def _necessary_or_solution(
    inst: CleaningInstance, trace: Trace | None, depth: int
) -> tuple[str, frozenset[int]]:
    """Run NecessarySet; short-circuits to ("solution", S) when a branch
    terminates with a verified full solution for this instance."""
    if inst.gprime.n == 0:
        return ("solution", frozenset(range(inst.g.n)))
    out = algorithm_a(inst, trace)
    if isinstance(out, ReducedInput):
        kind, data = _necessary_or_solution(out.instance, trace, depth + 1)
        return (kind, frozenset(out.g_ids[v] for v in data))
    if isinstance(out, RejectResult):
        return ("nset", frozenset())
    if isinstance(out, DirectSolution):
        return ("solution", out.deleted)
    collected: set[int] = set()
    branch_count = 0
    for res in out.results:
        branch_count += 1
        if isinstance(res, RejectResult):
            continue
        if isinstance(res, DirectSolution):
            if trace is not None:
                trace.emit("direct_solution", depth=depth, branch=branch_count)
            return ("solution", res.deleted)
        if isinstance(res, NecessarySetResult):
            if trace is not None:
                trace.emit(
                    "necessary_set", depth=depth, branch=branch_count,
                    size=len(res.vertices), k=inst.k,
                )
            collected |= res.vertices
            continue
        if isinstance(res, IndependentSubproblem):
            if trace is not None:
                trace.emit(
                    "subproblem", depth=depth, branch=branch_count,
                    param=res.instance.k, k=inst.k,
                )
            kind, data = _necessary_or_solution(res.instance, trace, depth + 1)
            if kind == "solution":
                collected.add(res.g_ids[min(data)])
            else:
                collected |= {res.g_ids[v] for v in data}
            continue
        raise CleanerError(f"unexpected branch result {type(res).__name__}")
    return ("nset", frozenset(collected))


def necessary_set(inst: CleaningInstance, trace: Trace | None = None) -> frozenset[int]:
    """A vertex set N with: the instance is solvable iff it stays solvable
    after deleting some single vertex of N.  Empty N signals rejection."""
    if inst.k < 1:
        raise CleanerError("necessary_set needs k >= 1")
    kind, data = _necessary_or_solution(inst, trace, 0)
    return data


def interval_cleaning(
    inst: CleaningInstance, trace: Trace | None = None
) -> Solution | None:
    """Full solver: a verified deletion set of size k, or None."""
    gp, g = inst.gprime, inst.g
    k = inst.k
    if k < 0:
        return None
    if k == 0:
        return Solution(frozenset()) if are_isomorphic(gp, g) else None
    kind, data = _necessary_or_solution(inst, trace, 0)
    if kind == "solution":
        rest = sorted(set(range(g.n)) - data)
        if len(data) != k or not are_isomorphic(induced_subgraph(g, rest), gp):
            raise CleanerError("direct solution failed verification")
        if trace is not None:
            trace.emit("solution", payload_size=len(data))
        return Solution(data)
    for s in sorted(data):
        keep = sorted(set(range(g.n)) - {s})
        sub = CleaningInstance(gp, induced_subgraph(g, keep))
        res = interval_cleaning(sub, trace)
        if res is not None:
            deleted = frozenset({s} | {keep[v] for v in res.deleted})
            rest = sorted(set(range(g.n)) - deleted)
            if not are_isomorphic(induced_subgraph(g, rest), gp):
                raise CleanerError("assembled solution failed verification")
            return Solution(deleted)
    return None
