"""Exact solvers, duality certificates, and instance tooling for the
two-neighbour packing problem and its dual, Roman domination."""

from .decomposition import (
    NiceTreeDecomposition,
    TdViolation,
    TreeDecomposition,
    decompose_heuristic,
    decompose_tree,
    make_nice,
    read_td,
    validate,
    write_td,
)
from .duality import (
    DualityCertificate,
    NormalizationViolation,
    build_packing,
    certify_tree,
    check_normalized_rdf,
    normalize_rdf,
    roman_tree_dp,
)
from .errors import ParseError, PreconditionError, SizeCapError
from .graph import (
    Graph,
    RootedTree,
    VertexSet,
    closed_neighbourhood,
    delete_edge,
    disjoint_union,
    induced_subgraph,
    read_graph,
    write_graph,
)
from .instances import (
    LabeledInstance,
    SplitMix64,
    complete,
    complete_multipartite,
    cycle,
    empty,
    extract_independent_set,
    gap_family,
    independent_set_brute,
    k_c4,
    no_packing_of_size_three,
    path,
    random_graph,
    random_tree,
    reduce_independent_set,
    star,
)
from .lp import LpConstraint, LpModel, LpVariable, build_rdp_ilp, build_tnp_dual, evaluate, write_lp
from .oracles import (
    RdfViolation,
    RomanFunction,
    SolveResult,
    check_min_rdf_properties,
    closed_form,
    degree_lower_bound,
    domination_brute,
    is_roman_dominating,
    is_two_neighbour_packing,
    private_neighbours,
    roman_brute,
    tnp_brute,
)
from .treewidth import dp_forget, dp_introduce, dp_join, dp_leaf, solve

__all__ = [
    "Graph",
    "RootedTree",
    "VertexSet",
    "RomanFunction",
    "SolveResult",
    "RdfViolation",
    "TreeDecomposition",
    "NiceTreeDecomposition",
    "TdViolation",
    "DualityCertificate",
    "NormalizationViolation",
    "LabeledInstance",
    "LpModel",
    "LpVariable",
    "LpConstraint",
    "SplitMix64",
    "ParseError",
    "PreconditionError",
    "SizeCapError",
    "closed_neighbourhood",
    "induced_subgraph",
    "delete_edge",
    "disjoint_union",
    "read_graph",
    "write_graph",
    "is_two_neighbour_packing",
    "is_roman_dominating",
    "tnp_brute",
    "roman_brute",
    "domination_brute",
    "check_min_rdf_properties",
    "private_neighbours",
    "closed_form",
    "degree_lower_bound",
    "validate",
    "decompose_tree",
    "decompose_heuristic",
    "make_nice",
    "read_td",
    "write_td",
    "solve",
    "dp_leaf",
    "dp_forget",
    "dp_introduce",
    "dp_join",
    "roman_tree_dp",
    "normalize_rdf",
    "check_normalized_rdf",
    "build_packing",
    "certify_tree",
    "path",
    "cycle",
    "complete",
    "empty",
    "complete_multipartite",
    "star",
    "gap_family",
    "k_c4",
    "no_packing_of_size_three",
    "random_tree",
    "random_graph",
    "reduce_independent_set",
    "extract_independent_set",
    "independent_set_brute",
    "build_rdp_ilp",
    "build_tnp_dual",
    "write_lp",
    "evaluate",
]

__version__ = "0.1.0"
