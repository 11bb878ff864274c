"""Exact polynomial-size extended formulations for pseudo-Boolean polytopes.

A signed hypergraph couples a node set with signed edges (node subsets
carrying a +/- sign per node).  The pseudo-Boolean set is the set of binary
points over nodes and edges where each edge variable equals the product of
its (possibly complemented) node literals; this package builds exact linear
extended formulations of its convex hull and certifies them against a
brute-force oracle with exact rational LP.
"""

from pbpoly.core import (
    Hypergraph,
    SignedEdge,
    SignedHypergraph,
    SignedTermExpansion,
    expand_signed_term,
    multilinear_hypergraph,
    rank,
    remove_node,
    to_multilinear_problem,
    underlying_hypergraph,
)
from pbpoly.acyclicity import (
    BetaCycle,
    CapExceeded,
    EliminationOrder,
    GapReport,
    alpha_elimination_order,
    beta_cycle_support_components,
    beta_elimination_order,
    enumerate_beta_cycles,
    find_beta_leaf,
    gap,
)
from pbpoly.formulation import (
    BuildReport,
    ExtendedFormulation,
    LinRow,
    Strategy,
    StrategyInapplicable,
    VarId,
    augment_with_projections,
    inflate,
    lift_binary_point,
    nested_completion,
    nested_system,
    pointed_formulation,
    rid_build,
)
from pbpoly.exactlp import LpOutcome, SimplexSolver, simplex_max
from pbpoly.oracle import (
    PBSPoint,
    VerificationReport,
    brute_max,
    enumerate_pbs,
    verify_hull,
)

__version__ = "0.1.0"

__all__ = [
    "BetaCycle",
    "BuildReport",
    "CapExceeded",
    "EliminationOrder",
    "ExtendedFormulation",
    "GapReport",
    "Hypergraph",
    "LinRow",
    "LpOutcome",
    "PBSPoint",
    "SignedEdge",
    "SignedHypergraph",
    "SignedTermExpansion",
    "SimplexSolver",
    "Strategy",
    "StrategyInapplicable",
    "VarId",
    "VerificationReport",
    "alpha_elimination_order",
    "augment_with_projections",
    "beta_cycle_support_components",
    "beta_elimination_order",
    "brute_max",
    "enumerate_beta_cycles",
    "enumerate_pbs",
    "expand_signed_term",
    "find_beta_leaf",
    "gap",
    "inflate",
    "lift_binary_point",
    "multilinear_hypergraph",
    "nested_completion",
    "nested_system",
    "pointed_formulation",
    "rank",
    "remove_node",
    "rid_build",
    "simplex_max",
    "to_multilinear_problem",
    "underlying_hypergraph",
    "verify_hull",
]
