"""Basis path sets of layered networks with skip connections."""
from .errors import (BadPair, BadWidth, BPKError, Inconsistent, InvalidNetwork,
                     MissingConsecutivePair, PathCountGuardExceeded, RankShortfall)
from .network import (Edge, NetworkSpec, NodeId, SubstructurePath, alpha_vector, beta_vector,
                      edge_incidence, enumerate_substructure_paths, induce_subgraph,
                      load_network, make_network, validate_network)
from .oracle import certify_basis, enumerate_all_paths, evaluate_expression, represent
from .pipeline import build_basis
from .subroutine import match_direct_edges, subroutine_basis

__all__ = [
    "BPKError", "BadPair", "BadWidth", "Edge", "Inconsistent", "InvalidNetwork",
    "MissingConsecutivePair", "NetworkSpec", "NodeId", "PathCountGuardExceeded",
    "RankShortfall", "SubstructurePath", "alpha_vector", "beta_vector", "certify_basis",
    "edge_incidence", "enumerate_all_paths", "enumerate_substructure_paths",
    "evaluate_expression", "induce_subgraph", "load_network", "make_network",
    "match_direct_edges", "represent", "build_basis", "subroutine_basis", "validate_network",
]
