from __future__ import annotations

import random
from itertools import combinations

import pytest

from intervalclean.cleaner import (
    Branches,
    CleaningInstance,
    IndependentSubproblem,
    NecessarySetResult,
    ReducedInput,
    RejectResult,
    Trace,
    algorithm_a,
    interval_cleaning,
    necessary_set,
    qq_case,
    qq_check_reduced,
    rule_disconnected_g,
    rule_disconnected_gprime,
    rule_isomorphic_components,
    rule_many_components,
    rule_universal_g,
    rule_universal_gprime,
)
from intervalclean.graphs import IntervalGraph, graph_from_intervals, induced_subgraph
from intervalclean.oracle import (
    brute_force_clean,
    induced_subgraph_embedding,
    plant_instance,
    random_interval_graph,
)
from intervalclean.pqtree import are_isomorphic

from util import complete_graph, disjoint_union, path_graph, star_graph


def solutions_of(inst):
    """All deletion sets, by exhaustive search (tiny instances only)."""
    out = []
    k = inst.k
    for sub in combinations(range(inst.g.n), k):
        keep = sorted(set(range(inst.g.n)) - set(sub))
        if are_isomorphic(induced_subgraph(inst.g, keep), inst.gprime):
            out.append(frozenset(sub))
    return out


def test_p4_p5_solution():
    sol = interval_cleaning(CleaningInstance(path_graph(4), path_graph(5)))
    assert sol is not None and sol.deleted in ({0}, {4})


def test_identity_instance():
    sol = interval_cleaning(CleaningInstance(path_graph(4), path_graph(4)))
    assert sol is not None and sol.deleted == frozenset()


def test_k3_not_in_p4():
    assert interval_cleaning(CleaningInstance(complete_graph(3), path_graph(4))) is None


@pytest.mark.parametrize("seed", range(40))
def test_planted_matches_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 10)
    k = rng.randint(0, min(3, n - 1))
    pi = plant_instance(n, k, seed)
    got = interval_cleaning(pi.instance)
    assert got is not None
    keep = sorted(set(range(n)) - got.deleted)
    assert are_isomorphic(induced_subgraph(pi.instance.g, keep), pi.instance.gprime)
    assert brute_force_clean(pi.instance) is not None


@pytest.mark.parametrize("seed", range(40))
def test_random_pairs_match_oracle(seed):
    rng = random.Random(seed + 7000)
    n = rng.randint(2, 10)
    k = rng.randint(0, min(3, n - 1))
    gp = random_interval_graph(n - k, seed * 3 + 1)
    g = random_interval_graph(n, seed * 5 + 2)
    inst = CleaningInstance(gp, g)
    got = interval_cleaning(inst)
    want = brute_force_clean(inst)
    assert (got is None) == (want is None)


def test_necessary_set_hits_a_solution():
    inst = CleaningInstance(path_graph(4), path_graph(5))
    n = necessary_set(inst)
    assert n
    assert any(n & s for s in solutions_of(inst))
    # deleting a vertex of N keeps the instance solvable for some choice
    assert any(
        interval_cleaning(
            CleaningInstance(
                inst.gprime,
                induced_subgraph(inst.g, sorted(set(range(5)) - {s})),
            )
        )
        is not None
        for s in n
    )


@pytest.mark.parametrize("seed", range(20))
def test_necessary_set_contract_random(seed):
    rng = random.Random(seed + 99)
    n = rng.randint(4, 9)
    k = rng.randint(1, min(3, n - 1))
    pi = plant_instance(n, k, seed + 11)
    inst = pi.instance
    nset = necessary_set(inst)
    sols = solutions_of(inst)
    assert sols, "planted instance must be solvable"
    assert any(nset & s for s in sols)


# -- rule 1 -----------------------------------------------------------------


def test_rule1_isomorphic_components():
    gp = disjoint_union(path_graph(4), complete_graph(3))
    g = disjoint_union(path_graph(5), complete_graph(3))
    out = rule_isomorphic_components(CleaningInstance(gp, g))
    assert isinstance(out, ReducedInput)
    assert out.instance.gprime.n == 4 and out.instance.g.n == 5
    assert are_isomorphic(out.instance.gprime, path_graph(4))
    # equisolvability spot check
    assert (interval_cleaning(out.instance) is not None) == (
        interval_cleaning(CleaningInstance(gp, g)) is not None
    )


def test_rule1_absent_without_match():
    gp = path_graph(3)
    g = disjoint_union(path_graph(2), path_graph(2))
    assert rule_isomorphic_components(CleaningInstance(gp, g)) is None


# -- rule 2 -----------------------------------------------------------------


def test_rule2_many_components_branches():
    # k=1: G' has 5 isolated vertices, G has those plus an attached edge
    gp = IntervalGraph.from_edges(5, [])
    g = IntervalGraph.from_edges(6, [(0, 5)])
    inst = CleaningInstance(gp, g)
    out = rule_many_components(inst)
    assert isinstance(out, Branches) and out.results
    for res in out.results:
        assert isinstance(res, NecessarySetResult) and len(res.vertices) == 1
    union = frozenset().union(*(r.vertices for r in out.results))
    assert any(union & s for s in solutions_of(inst))
    assert interval_cleaning(inst) is not None


def test_rule2_skipped_with_few_components():
    inst = CleaningInstance(path_graph(3), path_graph(4))
    assert rule_many_components(inst) is None


# -- rule 3 -----------------------------------------------------------------


def test_rule3_rejects_many_components():
    gp = IntervalGraph.from_edges(2, [])
    g = IntervalGraph.from_edges(3, [])
    out = rule_disconnected_g(CleaningInstance(gp, g))
    assert isinstance(out, RejectResult)
    assert interval_cleaning(CleaningInstance(gp, g)) is None


def test_rule3_subproblem_parameters():
    gp = disjoint_union(path_graph(2), path_graph(3))
    g = disjoint_union(path_graph(3), path_graph(4))
    out = rule_disconnected_g(CleaningInstance(gp, g))
    assert isinstance(out, Branches)
    for res in out.results:
        assert isinstance(res, IndependentSubproblem)
        assert 1 <= res.instance.k <= 1
    assert interval_cleaning(CleaningInstance(gp, g)) is not None


# -- rule 4 -----------------------------------------------------------------


def test_rule4_forced_universal_vertex():
    # fan: universal vertex over P3; target P3 has no universal vertex
    g = graph_from_intervals({0: (0, 3), 1: (0, 1), 2: (1, 2), 3: (2, 3)})
    gp = path_graph(3)
    inst = CleaningInstance(gp, g)
    out = rule_universal_g(inst)
    assert isinstance(out, NecessarySetResult) and out.vertices == {0}
    assert all(0 in s for s in solutions_of(inst))


def test_rule4_cancels_universal_pair():
    out = rule_universal_g(CleaningInstance(path_graph(2), path_graph(3)))
    assert isinstance(out, ReducedInput)
    assert out.instance.gprime.n == 1 and out.instance.g.n == 2
    assert out.instance.g.edge_count() == 0


# -- rule 5 -----------------------------------------------------------------


def test_rule5_two_element_sets():
    gp = disjoint_union(path_graph(2), path_graph(2))
    g = path_graph(5)
    inst = CleaningInstance(gp, g)
    out = rule_disconnected_gprime(inst)
    assert isinstance(out, Branches) and out.results
    for res in out.results:
        assert isinstance(res, NecessarySetResult) and len(res.vertices) == 2
    union = frozenset().union(*(r.vertices for r in out.results))
    assert any(union & s for s in solutions_of(inst))


# -- rule 6 -----------------------------------------------------------------


def test_rule6_span_extremes():
    gp = path_graph(3)  # universal middle vertex
    g = path_graph(4)  # no universal vertex
    inst = CleaningInstance(gp, g)
    out = rule_universal_gprime(inst)
    assert isinstance(out, NecessarySetResult) and len(out.vertices) == 2
    a, b = sorted(out.vertices)
    assert not any(g.has_edge(a, x) and g.has_edge(b, x) for x in range(g.n))
    assert any(out.vertices & s for s in solutions_of(inst))


# -- Q-Q case ----------------------------------------------------------------


def fat_path(lengths):
    """Interval graph with len(lengths) clique positions; lengths[i] twins."""
    model = {}
    vid = 0
    for i, www in enumerate(lengths):
        for _ in range(www):
            model[vid] = (i, i + 1)
            vid += 1
    return graph_from_intervals(model)


def test_qq_check_reduced_single_mismatch():
    # P6 vs P6 with one subtree blown up: graft an extra leaf-vertex into
    # one child by doubling an end interval
    gp = path_graph(6)
    g = graph_from_intervals(
        {0: (0, 1), 1: (1, 2), 2: (2, 3), 3: (3, 4), 4: (4, 5), 5: (5, 6), 6: (0, 0)}
    )
    inst = CleaningInstance(gp, g)
    out = qq_check_reduced(inst)
    assert out is None or isinstance(out, ReducedInput)
    got = interval_cleaning(inst)
    want = brute_force_clean(inst)
    assert (got is None) == (want is None)


def test_qq_label_surplus_singleton():
    # G = P4 plus a twin of one middle vertex; G' = P4
    g = graph_from_intervals(
        {0: (0, 1), 1: (1, 2), 2: (2, 3), 3: (3, 4), 4: (1, 2)}
    )
    gp = path_graph(4)
    inst = CleaningInstance(gp, g)
    out = algorithm_a(inst)
    assert isinstance(out, Branches)
    singletons = [
        r.vertices
        for r in out.results
        if isinstance(r, NecessarySetResult) and len(r.vertices) == 1
    ]
    assert singletons
    assert interval_cleaning(inst) is not None


def test_qq_fewer_children_rejected_in_nonlocal_branches():
    # G has 3 root children (fat P4), G' has 5 (P6): m < m' in both
    # orientations, so only the local branch can contribute
    g = fat_path([2, 2, 2])
    gp = path_graph(6)
    inst = CleaningInstance(gp, g)
    assert inst.k == 0 or inst.k >= 0
    out = qq_case(inst)
    kinds = [type(r).__name__ for r in out.results]
    assert kinds.count("RejectResult") >= 2
    got = interval_cleaning(inst)
    assert (got is None) == (brute_force_clean(inst) is None)


def test_qq_twin_swap_instance():
    # G = P4 + two twins at the right middle; G' = P4 + twin at the left
    # middle; solvable by deleting one right twin (mirror symmetry)
    g = graph_from_intervals(
        {0: (0, 1), 1: (1, 2), 2: (2, 3), 3: (3, 4), 4: (2, 3), 5: (2, 3)}
    )
    gp = graph_from_intervals(
        {0: (0, 1), 1: (1, 2), 2: (2, 3), 3: (3, 4), 4: (1, 2)}
    )
    inst = CleaningInstance(gp, g)
    got = interval_cleaning(inst)
    want = brute_force_clean(inst)
    assert (got is None) == (want is None)


@pytest.mark.parametrize("seed", range(12))
def test_dense_structured_instances(seed):
    rng = random.Random(seed * 71 + 17)
    m = rng.randint(5, 7)
    model = {}
    vid = 0
    for i in range(m):
        if rng.random() < 0.75:
            model[vid] = (2 * i, 2 * i)
            vid += 1
        model[vid] = (2 * max(0, i - rng.randint(1, 2)), 2 * i)
        vid += 1
    g = graph_from_intervals(model)
    k = rng.randint(1, 2)
    dels = rng.sample(range(g.n), k)
    keep = sorted(set(range(g.n)) - set(dels))
    gp = induced_subgraph(g, keep)
    inst = CleaningInstance(IntervalGraph.from_edges(gp.n, gp.edges()), g)
    tr = Trace()
    got = interval_cleaning(inst, tr)
    assert got is not None
    for ev in tr.events:
        if ev["event"] == "necessary_set":
            assert ev["payload"]["size"] <= 2 * ev["payload"]["k"] + 1
        if ev["event"] == "subproblem":
            assert 1 <= ev["payload"]["param"] <= ev["payload"]["k"] - 1
        if ev["event"] == "right_split":
            assert ev["payload"]["ok"]


def test_trace_depth_bound():
    pi = plant_instance(10, 3, 424242, density_knob=2.0)
    tr = Trace()
    interval_cleaning(pi.instance, tr)
    for ev in tr.events:
        if ev["event"] == "qq_branch":
            k = ev["payload"]["k"]
            assert ev["depth"] <= 8 * k**3 + 76 * k**2


def test_empty_gprime_short_circuit():
    gp = IntervalGraph.from_edges(0, [])
    g = path_graph(2)
    sol = interval_cleaning(CleaningInstance(gp, g))
    assert sol is not None and sol.deleted == {0, 1}
