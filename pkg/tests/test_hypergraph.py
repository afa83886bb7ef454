import pytest

import golden
from hyperzeta.errors import ParseError
from hyperzeta.hypergraph import (
    Hypergraph,
    adjacency_matrix,
    bipartite_graph,
    component_count,
    degree_matrix,
    symmetric_digraph,
    validate_hypergraph,
)


def test_from_dict_preserves_declaration_order(example_hypergraph):
    H = example_hypergraph
    assert H.vertices == ("v1", "v2", "v3")
    assert [name for name, _ in H.edges] == ["e1", "e2", "e3"]
    assert H.to_dict() == golden.BASE_HYPERGRAPH


def test_parse_rejections():
    with pytest.raises(ParseError):
        Hypergraph.from_json("{not json")
    with pytest.raises(ParseError):
        Hypergraph.from_dict([1, 2])
    with pytest.raises(ParseError):
        Hypergraph.from_dict({"vertices": ["a", "a"], "edges": {"e": ["a"]}})
    with pytest.raises(ParseError):
        Hypergraph.from_dict({"vertices": ["a"], "edges": {"e": []}})
    with pytest.raises(ParseError):
        Hypergraph.from_dict({"vertices": ["a"], "edges": {"e": ["a", "a"]}})
    with pytest.raises(ParseError):
        Hypergraph.from_dict({"vertices": ["a"], "edges": {"e": ["b"]}})
    with pytest.raises(ParseError):  # vertex b covered by no hyperedge
        Hypergraph.from_dict({"vertices": ["a", "b"], "edges": {"e": ["a"]}})


def test_diagnostics_flags():
    H = Hypergraph.from_dict({
        "vertices": ["a", "b", "c"],
        "edges": {"e1": ["a"], "e2": ["a", "b"], "e3": ["b", "c"],
                  "e4": ["a", "b"]}})
    diag = validate_hypergraph(H)
    assert diag.loops == ("e1",)
    assert diag.low_incidence == ("c",)
    assert diag.duplicate_edge_sets == (("e2", "e4"),)
    assert not diag.ok
    assert len(diag.failures()) == 2


def test_disconnected_detection():
    H = Hypergraph.from_dict({
        "vertices": ["a", "b", "c", "d"],
        "edges": {"e1": ["a", "b"], "e2": ["a", "b"],
                  "e3": ["c", "d"], "e4": ["c", "d"]}})
    diag = validate_hypergraph(H)
    assert not diag.connected
    assert component_count(bipartite_graph(H)) == 2


def test_example_is_fully_valid(example_hypergraph):
    diag = validate_hypergraph(example_hypergraph)
    assert diag.ok and diag.connected
    assert not diag.duplicate_edge_sets


def test_bipartite_incidence_order(example_bipartite):
    B = example_bipartite
    assert B.part_v == ("v1", "v2", "v3")
    assert B.part_e == ("e1", "e2", "e3")
    # edges sorted by (hyperedge, member) declaration order
    assert B.edges == ((0, 3), (1, 3), (1, 4), (2, 4), (0, 5), (1, 5), (2, 5))
    assert B.n_edges == 7


def test_adjacency_and_degree_match_reference(example_bipartite):
    assert adjacency_matrix(example_bipartite) == golden.BASE_ADJACENCY
    D = degree_matrix(example_bipartite)
    assert [D[i][i] for i in range(6)] == golden.BASE_DEGREES


def test_symmetric_digraph_involution(example_bipartite):
    R = symmetric_digraph(example_bipartite)
    assert R.n_directed == 14 and R.r == 7
    for i in range(14):
        j = R.inverse_index(i)
        assert R.inverse_index(j) == i
        assert R.origin[i] == R.terminus[j]
        assert R.terminus[i] == R.origin[j]
    # first half runs from the vertex part into the hyperedge part
    for i in range(R.r):
        assert R.origin[i] < 3 <= R.terminus[i]
