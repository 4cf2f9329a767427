"""Cleaning of interval graphs: delete k vertices of G to reach G'.

The package bundles the graph substrate, PQ-tree machinery (construction,
labels, canonical codes, isomorphism), complete-module enumeration, the
bounded-search-tree solver, brute-force oracles, and the hardness-instance
generator, plus a CLI front end.
"""

from .graphs import (
    CliqueOrdering,
    GraphError,
    Interval,
    IntervalGraph,
    NotIntervalError,
    connected_components,
    graph_from_intervals,
    induced_subgraph,
    is_complete_module,
    maximal_cliques_ordered,
    universal_vertices,
)
from .pqtree import (
    CanonicalCode,
    LabeledPQTree,
    NotIsomorphicError,
    PQNode,
    PQTree,
    are_isomorphic,
    build_labeled,
    build_pqtree,
    canonical_code,
    extract_isomorphism,
    graph_code,
    label_pqtree,
    reverse_q_children,
)
from .modules import (
    CompleteModule,
    complete_modules,
    h_short_complete_modules,
    occurrences_as_complete_module,
    occurrences_as_short_module,
)
from .cleaner import (
    AnnotatedFragmentation,
    BlockGuess,
    Branches,
    CleaningInstance,
    DirectSolution,
    Fragment,
    IndependentSubproblem,
    NecessarySetResult,
    ReducedInput,
    RejectResult,
    Solution,
    Trace,
    algorithm_a,
    branch_on_block,
    fragmentation_loop,
    fragmentation_measure,
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
from .oracle import (
    PlantedInstance,
    brute_force_clean,
    brute_force_iso,
    induced_subgraph_embedding,
    plant_instance,
    random_interval_graph,
)
from .hardness import CliqueInstance, build_clique_reduction, expected_sizes
