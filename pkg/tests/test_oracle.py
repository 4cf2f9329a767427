from __future__ import annotations

import random

import pytest

from intervalclean.cleaner import CleaningInstance
from intervalclean.graphs import induced_subgraph
from intervalclean.oracle import (
    OracleLimitError,
    brute_force_clean,
    brute_force_iso,
    induced_subgraph_embedding,
    plant_instance,
    random_interval_graph,
)
from intervalclean.pqtree import are_isomorphic, build_pqtree, verify_isomorphism

from util import brute_isomorphism, complete_graph, path_graph, star_graph


def test_brute_clean_p4_p5():
    sol = brute_force_clean(CleaningInstance(path_graph(4), path_graph(5)))
    assert sol == {0}  # first endpoint in lexicographic subset order


def test_brute_clean_k2_p3():
    sol = brute_force_clean(CleaningInstance(path_graph(2), path_graph(3)))
    assert sol in ({0}, {2})


def test_brute_clean_no_triangle():
    assert brute_force_clean(CleaningInstance(complete_graph(3), path_graph(4))) is None


def test_brute_clean_limit():
    with pytest.raises(OracleLimitError):
        brute_force_clean(CleaningInstance(path_graph(4), path_graph(20)), limit_n=12)


def test_brute_iso_identity():
    g = path_graph(5)
    assert brute_force_iso(g, g) == {v: v for v in range(5)}


def test_brute_iso_rejects():
    assert brute_force_iso(path_graph(4), star_graph(3)) is None


@pytest.mark.parametrize("seed", range(30))
def test_brute_iso_agrees_with_pqtree(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 7)
    g1 = random_interval_graph(n, seed * 5 + 1)
    g2 = random_interval_graph(n, seed * 9 + 2)
    got = brute_force_iso(g1, g2)
    assert (got is not None) == are_isomorphic(g1, g2)
    if got is not None:
        assert verify_isomorphism(g1, g2, got)


@pytest.mark.parametrize("seed", range(20))
def test_random_graph_deterministic_and_interval(seed):
    g1 = random_interval_graph(seed % 9 + 1, seed)
    g2 = random_interval_graph(seed % 9 + 1, seed)
    assert g1.adj == g2.adj and g1.model == g2.model
    build_pqtree(g1)  # never raises on generated models


def test_random_graph_k1():
    g = random_interval_graph(1, 7)
    assert g.n == 1 and g.edge_count() == 0


@pytest.mark.parametrize("seed", range(20))
def test_plant_instance_planted_is_solution(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 10)
    k = rng.randint(0, n - 1)
    pi = plant_instance(n, k, seed)
    assert len(pi.planted) == k
    keep = sorted(set(range(n)) - pi.planted)
    rest = induced_subgraph(pi.instance.g, keep)
    assert are_isomorphic(rest, pi.instance.gprime)


def test_plant_k0_is_relabel():
    pi = plant_instance(6, 0, 3)
    assert are_isomorphic(pi.instance.gprime, pi.instance.g)


@pytest.mark.parametrize("seed", range(15))
def test_embedding_oracle_matches_brute_clean(seed):
    rng = random.Random(seed + 50)
    n = rng.randint(3, 9)
    k = rng.randint(0, min(3, n - 1))
    gp = random_interval_graph(n - k, seed * 3 + 11)
    g = random_interval_graph(n, seed * 7 + 13)
    inst = CleaningInstance(gp, g)
    emb = induced_subgraph_embedding(gp, g)
    brute = brute_force_clean(inst)
    assert (emb is not None) == (brute is not None)
    if emb is not None:
        for u in range(gp.n):
            for v in range(u + 1, gp.n):
                assert gp.has_edge(u, v) == g.has_edge(emb[u], emb[v])
