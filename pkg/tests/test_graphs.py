from __future__ import annotations

import pytest

from intervalclean.graphs import (
    GraphError,
    Interval,
    IntervalGraph,
    connected_components,
    graph_from_intervals,
    induced_subgraph,
    is_complete_module,
    maximal_cliques_ordered,
    universal_vertices,
)

from util import (
    brute_is_complete_module,
    brute_maximal_cliques,
    path_graph,
    random_interval,
    random_model,
)


def test_graph_from_intervals_path():
    g = graph_from_intervals({0: (0, 1), 1: (1, 2), 2: (2, 3)})
    assert g.n == 3
    assert g.has_edge(0, 1) and g.has_edge(1, 2) and not g.has_edge(0, 2)


def test_graph_from_intervals_triangle():
    g = graph_from_intervals({0: (0, 1), 1: (0, 1), 2: (0, 1)})
    assert g.edge_count() == 3


def test_hardness_formula_intervals_intersect():
    # a_1^+ = [2,5] and b_1^+ = [4,7] from the reduction table at i=1
    g = graph_from_intervals({0: (2, 5), 1: (4, 7)})
    assert g.has_edge(0, 1)


def test_malformed_interval_rejected():
    with pytest.raises(GraphError):
        graph_from_intervals({0: (3, 2)})


def test_non_dense_ids_rejected():
    with pytest.raises(GraphError):
        graph_from_intervals({1: (0, 1), 2: (0, 1)})


def test_cliques_path():
    g = graph_from_intervals({0: (0, 1), 1: (1, 2), 2: (2, 3)})
    co = maximal_cliques_ordered(g)
    assert co.as_sets() == [{0, 1}, {1, 2}]


def test_cliques_triangle():
    g = graph_from_intervals({0: (0, 1), 1: (0, 1), 2: (0, 1)})
    assert maximal_cliques_ordered(g).as_sets() == [{0, 1, 2}]


@pytest.mark.parametrize("seed", range(40))
def test_cliques_match_bruteforce(seed):
    g = random_interval(seed % 9 + 2, seed)
    co = maximal_cliques_ordered(g)
    assert set(frozenset(c) for c in co.as_sets()) == brute_maximal_cliques(g)
    assert co.is_consecutive(g.n)


@pytest.mark.parametrize("seed", range(20))
def test_model_adjacency_is_intersection(seed):
    model = random_model(seed % 8 + 2, seed + 1000)
    g = graph_from_intervals(model)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            iu, iv = Interval(*model[u]), Interval(*model[v])
            assert g.has_edge(u, v) == iu.intersects(iv)


def test_universal_vertices_path():
    assert universal_vertices(path_graph(3)) == {1}
    assert universal_vertices(path_graph(4)) == frozenset()


def test_connected_components_two_edges():
    g = IntervalGraph.from_edges(4, [(0, 1), (2, 3)])
    assert connected_components(g) == [frozenset({0, 1}), frozenset({2, 3})]


def test_induced_subgraph_path():
    g = path_graph(4)
    h = induced_subgraph(g, {0, 1, 2})
    assert h.n == 3 and h.edges() == [(0, 1), (1, 2)]


def test_induced_subgraph_keeps_model():
    g = graph_from_intervals({0: (0, 1), 1: (1, 2), 2: (2, 3)})
    h = induced_subgraph(g, {0, 2})
    assert h.model == (Interval(0, 1), Interval(2, 3))
    assert h.edge_count() == 0


def test_induced_subgraph_unknown_vertex():
    with pytest.raises(GraphError):
        induced_subgraph(path_graph(3), {0, 5})


def test_complete_module_path_examples():
    g = path_graph(3)
    assert is_complete_module(g, {0})
    assert not is_complete_module(g, {1})
    assert is_complete_module(g, {0, 1, 2})


def test_complete_module_empty_rejected():
    with pytest.raises(GraphError):
        is_complete_module(path_graph(3), set())


@pytest.mark.parametrize("seed", range(25))
def test_complete_module_matches_definition(seed):
    from itertools import combinations

    g = random_interval(seed % 7 + 2, seed + 500)
    for r in range(1, g.n + 1):
        for sub in combinations(range(g.n), r):
            assert is_complete_module(g, set(sub)) == brute_is_complete_module(
                g, set(sub)
            )
