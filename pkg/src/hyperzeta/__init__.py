"""Exact Bartholdi and Ihara zeta functions and L-functions of finite
hypergraphs and their permutation-voltage covers, with independent
determinant, Euler-product and decomposition routes that must agree."""

__version__ = "1.0.0"

from .algebra import BiPoly, PolyMatrix, TruncatedSeries, collapse_to_t, det_exact, series_inverse
from .covering import (
    GroupTable,
    VoltageAssignment,
    complete_voltage,
    covering_hypergraph,
    derived_graph,
    group_closure,
    voltage_from_json,
)
from .cycles import cbc, enumerate_prime_cycles, euler_product_series, lyndon_words
from .errors import HyperzetaError
from .hypergraph import Hypergraph, bipartite_graph, symmetric_digraph, validate_hypergraph
from .reptheory import IrrepCatalog, Representation, builtin_irreps, multiplicities, permutation_representation
from .zeta import (
    ZetaReport,
    bartholdi_zeta,
    lfunction_edge,
    lfunction_vertex,
    matrix_identity_suite,
    verify_decomposition,
)

__all__ = [
    "BiPoly", "PolyMatrix", "TruncatedSeries", "collapse_to_t", "det_exact",
    "series_inverse", "GroupTable", "VoltageAssignment", "complete_voltage",
    "covering_hypergraph", "derived_graph", "group_closure",
    "voltage_from_json", "cbc", "enumerate_prime_cycles",
    "euler_product_series", "lyndon_words", "HyperzetaError", "Hypergraph",
    "bipartite_graph", "symmetric_digraph", "validate_hypergraph",
    "IrrepCatalog", "Representation", "builtin_irreps", "multiplicities",
    "permutation_representation", "ZetaReport", "bartholdi_zeta",
    "lfunction_edge", "lfunction_vertex", "matrix_identity_suite",
    "verify_decomposition",
]
