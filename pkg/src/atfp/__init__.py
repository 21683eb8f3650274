"""Induced disjoint paths on AT-free graphs, with derived solvers,
instance generators and brute-force oracles for differential testing."""

__version__ = "0.1.0"

from .graph import (
    Graph,
    bfs_shortest_path,
    connected_components,
    induced_subgraph,
    is_induced_path,
    neighbors,
)
from .atfree import (
    cycle_chord_property,
    dominating_path,
    find_asteroidal_triple,
    find_dominating_pair,
    is_asteroidal_triple,
    is_at_free,
    is_caterpillar,
    is_dominating_pair,
)
from .preprocess import (
    Instance,
    PreprocessResult,
    Verdict,
    build_Gi,
    preprocess,
    step1,
    step2,
    step3,
    step4,
    validate_instance,
)
from .structure import (
    AuxiliaryH,
    InterferenceGraph,
    build_H,
    build_interference_graph,
    compute_Wi,
    compute_Zi,
    decompose_step6,
    order_components,
    pairs_interfere,
    step5,
)
from .dp import (
    SolveStats,
    component,
    sol,
    solve_idp,
    terminal_layout,
    verify_solution,
)
from .subgraph import (
    AnchoredPattern,
    ahead_set,
    anchored_itm,
    coinciding_pairs,
    itm,
    k_in_a_cycle,
    k_in_a_path,
    k_in_a_tree,
    verify_coinciding,
)
from .hardness import ReductionOutput, reduce_clique_to_itm, verify_reduction_small
from .io import gen_random, parse_instance, serialize_instance
from . import oracles

__all__ = [
    "AnchoredPattern",
    "AuxiliaryH",
    "Graph",
    "Instance",
    "InterferenceGraph",
    "PreprocessResult",
    "ReductionOutput",
    "SolveStats",
    "Verdict",
    "ahead_set",
    "anchored_itm",
    "bfs_shortest_path",
    "build_Gi",
    "build_H",
    "build_interference_graph",
    "coinciding_pairs",
    "component",
    "compute_Wi",
    "compute_Zi",
    "connected_components",
    "cycle_chord_property",
    "decompose_step6",
    "dominating_path",
    "find_asteroidal_triple",
    "find_dominating_pair",
    "gen_random",
    "induced_subgraph",
    "is_asteroidal_triple",
    "is_at_free",
    "is_caterpillar",
    "is_dominating_pair",
    "is_induced_path",
    "itm",
    "k_in_a_cycle",
    "k_in_a_path",
    "k_in_a_tree",
    "neighbors",
    "oracles",
    "order_components",
    "pairs_interfere",
    "parse_instance",
    "preprocess",
    "reduce_clique_to_itm",
    "serialize_instance",
    "sol",
    "solve_idp",
    "step1",
    "step2",
    "step3",
    "step4",
    "step5",
    "terminal_layout",
    "validate_instance",
    "verify_coinciding",
    "verify_reduction_small",
    "verify_solution",
]
