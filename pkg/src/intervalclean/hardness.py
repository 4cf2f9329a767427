"""Generator for the Clique-based hardness instances.

From a graph F and a target clique size k it emits two interval graphs
(H, G) such that H embeds into G as an induced subgraph exactly when F
has a k-clique.  Both come with their defining interval models; every
interval [x1, x2] has its mirror [-x2, -x1] present.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import GraphError, IntervalGraph, graph_from_intervals


@dataclass(frozen=True)
class CliqueInstance:
    f: IntervalGraph  # treated as a plain simple graph
    k: int


def _gadget_model(size: int, pair_indices) -> dict[int, tuple[int, int]]:
    """Shared layout of the two constructions: four ladder intervals per
    index on each side, a mirror-symmetric spine interval per index, pair
    intervals for ``pair_indices``, and the two long guards."""
    model: dict[int, tuple[int, int]] = {}
    vid = 0
    for i in range(1, size + 1):
        model[vid] = (10 * i - 8, 10 * i - 5); vid += 1  # a+
        model[vid] = (-10 * i + 5, -10 * i + 8); vid += 1  # a-
        model[vid] = (10 * i - 6, 10 * i - 3); vid += 1  # b+
        model[vid] = (-10 * i + 3, -10 * i + 6); vid += 1  # b-
        model[vid] = (10 * i - 4, 10 * i - 1); vid += 1  # c+
        model[vid] = (-10 * i + 1, -10 * i + 4); vid += 1  # c-
        model[vid] = (10 * i - 2, 10 * i); vid += 1  # d+
        model[vid] = (-10 * i, -10 * i + 2); vid += 1  # d-
        model[vid] = (-10 * i + 5, 10 * i - 5); vid += 1  # spine f_{i,i}
    for i, j in pair_indices:
        model[vid] = (-10 * i + 7, 10 * j - 7); vid += 1  # f_{i,j}
        model[vid] = (-10 * j + 7, 10 * i - 7); vid += 1  # f_{j,i}
    model[vid] = (-10 * size, -1); vid += 1  # guard-
    model[vid] = (1, 10 * size); vid += 1  # guard+
    return model


def build_clique_reduction(ci: CliqueInstance) -> tuple[IntervalGraph, IntervalGraph]:
    """The (H, G) pair for a clique instance (F, k); both carry models."""
    n, k = ci.f.n, ci.k
    if not 1 <= k <= n:
        raise GraphError("clique size must be in [1, n]")
    pairs_g = [(u + 1, v + 1) for u, v in ci.f.edges()]
    g = graph_from_intervals(_gadget_model(n, pairs_g))
    pairs_h = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    h = graph_from_intervals(_gadget_model(k, pairs_h))
    return h, g


def expected_sizes(ci: CliqueInstance) -> tuple[int, int]:
    """(|V(H)|, |V(G)|) = (k^2 + 8k + 2, 9n + 2|E| + 2)."""
    n, k = ci.f.n, ci.k
    return (k * k + 8 * k + 2, 9 * n + 2 * ci.f.edge_count() + 2)
