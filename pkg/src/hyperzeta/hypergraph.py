"""Hypergraphs, their incidence bipartite graphs and symmetric digraphs.

Index conventions (fixed so matrix golden tests are deterministic):

* hypergraph vertices and hyperedges keep the declaration order of the input;
* the bipartite graph orders all part-V vertices first, then part-E vertices;
* undirected bipartite edges are ordered by (hyperedge, vertex) declaration
  order, one per incidence;
* directed edge i (1-based i <= r) is undirected edge i oriented from its
  part-V endpoint; directed edge i + r is its inverse.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ParseError


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple          # vertex names, declaration order
    edges: tuple             # (name, tuple of member vertex names)

    def __post_init__(self):
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise ParseError(f"duplicate vertex name {v!r}")
            seen.add(v)
        names = set()
        vset = set(self.vertices)
        for name, members in self.edges:
            if name in names:
                raise ParseError(f"duplicate hyperedge name {name!r}")
            names.add(name)
            if not members:
                raise ParseError(f"hyperedge {name!r} is empty")
            if len(set(members)) != len(members):
                raise ParseError(f"hyperedge {name!r} repeats a vertex")
            for v in members:
                if v not in vset:
                    raise ParseError(
                        f"hyperedge {name!r} uses unknown vertex {v!r}")
        covered = {v for _, members in self.edges for v in members}
        if covered != vset:
            missing = sorted(vset - covered)
            raise ParseError(
                f"vertices not covered by any hyperedge: {missing}")

    @classmethod
    def from_dict(cls, data) -> "Hypergraph":
        if not isinstance(data, dict):
            raise ParseError("hypergraph JSON must be an object")
        try:
            vertices = tuple(data["vertices"])
            raw_edges = data["edges"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"missing hypergraph field: {exc}") from exc
        if not isinstance(raw_edges, dict):
            raise ParseError('"edges" must be an object (name -> members)')
        edges = tuple((name, tuple(members))
                      for name, members in raw_edges.items())
        return cls(vertices, edges)

    @classmethod
    def from_json(cls, text: str) -> "Hypergraph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": {name: list(members) for name, members in self.edges}}

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def incidence_counts(self) -> dict:
        counts = {v: 0 for v in self.vertices}
        for _, members in self.edges:
            for v in members:
                counts[v] += 1
        return counts


@dataclass(frozen=True)
class Diagnostics:
    connected: bool
    loops: tuple                 # hyperedge names of cardinality 1
    low_incidence: tuple         # vertices in fewer than 2 hyperedges
    duplicate_edge_sets: tuple   # pairs of hyperedge names with equal sets

    @property
    def ok(self) -> bool:
        return self.connected and not self.loops and not self.low_incidence

    def failures(self) -> list:
        out = []
        if not self.connected:
            out.append("hypergraph is not connected")
        if self.loops:
            out.append(f"loops (cardinality-1 hyperedges): {list(self.loops)}")
        if self.low_incidence:
            out.append(
                f"hypervertices in fewer than 2 hyperedges: {list(self.low_incidence)}")
        return out


@dataclass(frozen=True)
class BipartiteGraph:
    """Simple bipartite graph; part-V vertices first, then part-E."""

    part_v: tuple    # names
    part_e: tuple    # names
    edges: tuple     # (v_index, e_index) global indices, v < |part_v| <= e

    @property
    def n_vertices(self) -> int:
        return len(self.part_v) + len(self.part_e)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def vertex_names(self) -> tuple:
        return self.part_v + self.part_e

    def adjacency_lists(self):
        adj = [[] for _ in range(self.n_vertices)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def validate_hypergraph(H: Hypergraph) -> Diagnostics:
    """Diagnostic report for the zeta-pipeline hypotheses."""
    loops = tuple(name for name, members in H.edges if len(members) == 1)
    counts = H.incidence_counts()
    low = tuple(v for v in H.vertices if counts[v] < 2)
    dup = []
    by_set = {}
    for name, members in H.edges:
        key = frozenset(members)
        if key in by_set:
            dup.append((by_set[key], name))
        else:
            by_set[key] = name
    # connectivity via breadth-first traversal on B_H
    B = bipartite_graph(H)
    connected = _connected(B) if H.vertices else True
    return Diagnostics(connected, loops, low, tuple(dup))


def _connected(B: BipartiteGraph) -> bool:
    n = B.n_vertices
    if n == 0:
        return True
    adj = B.adjacency_lists()
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                count += 1
                stack.append(y)
    return count == n


def component_count(B: BipartiteGraph) -> int:
    n = B.n_vertices
    adj = B.adjacency_lists()
    seen = [False] * n
    comps = 0
    for start in range(n):
        if seen[start]:
            continue
        comps += 1
        stack = [start]
        seen[start] = True
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
    return comps


def bipartite_graph(H: Hypergraph) -> BipartiteGraph:
    """The incidence bipartite graph, one edge per incidence v in e."""
    v_index = {v: i for i, v in enumerate(H.vertices)}
    nv = len(H.vertices)
    edges = []
    for j, (_, members) in enumerate(H.edges):
        for v in members:
            edges.append((v_index[v], nv + j))
    return BipartiteGraph(tuple(H.vertices),
                          tuple(name for name, _ in H.edges),
                          tuple(edges))


@dataclass(frozen=True)
class SymmetricDigraph:
    """Directed doubling of a simple graph with the fixed involution
    i <-> i + r on edge indices (0-based internally)."""

    n_vertices: int
    origin: tuple     # origin[i] = o(e_i), 0-based edge indices
    terminus: tuple

    @property
    def n_directed(self) -> int:
        return len(self.origin)

    @property
    def r(self) -> int:
        return len(self.origin) // 2

    def inverse_index(self, i: int) -> int:
        r = self.r
        return i + r if i < r else i - r

    def edges_from(self, vertex: int):
        return [i for i in range(self.n_directed) if self.origin[i] == vertex]


def symmetric_digraph(B: BipartiteGraph) -> SymmetricDigraph:
    """Directed edges e_1..e_r oriented part-V -> part-E, then the inverses."""
    origin = []
    terminus = []
    for a, b in B.edges:
        origin.append(a)
        terminus.append(b)
    for a, b in B.edges:
        origin.append(b)
        terminus.append(a)
    return SymmetricDigraph(B.n_vertices, tuple(origin), tuple(terminus))


def adjacency_matrix(B: BipartiteGraph):
    n = B.n_vertices
    A = [[0] * n for _ in range(n)]
    for a, b in B.edges:
        A[a][b] = 1
        A[b][a] = 1
    return A


def degree_matrix(B: BipartiteGraph):
    n = B.n_vertices
    D = [[0] * n for _ in range(n)]
    for a, b in B.edges:
        D[a][a] += 1
        D[b][b] += 1
    return D
