"""Permutation voltage assignments, derived covers and the voltage group.

Conventions (left action throughout): permutations act as g(j), composition
(g*h)(x) = g(h(x)), the derived-edge rule connects (origin, g(j)) to
(terminus, j), and the permutation representation has entry 1 at (g(j), j).
These three must share one convention for the Kronecker block identity to
hold entrywise.

Permutations are stored in one-line notation as 0-based tuples; the JSON
boundary is 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import (
    BadPermutation,
    BadVoltageKey,
    ConflictingVoltage,
    EmptyHyperedge,
    GroupTooLarge,
    ParseError,
)
from .hypergraph import BipartiteGraph, Hypergraph, symmetric_digraph

DEFAULT_GROUP_CAP = 10080


# -- permutation helpers ---------------------------------------------------

def identity_perm(k: int) -> tuple:
    return tuple(range(k))


def compose(g: tuple, h: tuple) -> tuple:
    """(g*h)(x) = g(h(x))."""
    return tuple(g[h[x]] for x in range(len(g)))


def invert(g: tuple) -> tuple:
    inv = [0] * len(g)
    for j, i in enumerate(g):
        inv[i] = j
    return tuple(inv)


def check_perm(img, k: int) -> tuple:
    """Validate a 0-based one-line image list for S_k."""
    img = tuple(img)
    if len(img) != k or sorted(img) != list(range(k)):
        raise BadPermutation(f"{img!r} is not a bijection of [{k}]")
    return img


def perm_order(g: tuple) -> int:
    n = 1
    h = g
    ident = identity_perm(len(g))
    while h != ident:
        h = compose(h, g)
        n += 1
    return n


def fixed_points(g: tuple) -> int:
    return sum(1 for j, i in enumerate(g) if i == j)


# -- voltage assignments ---------------------------------------------------

@dataclass(frozen=True)
class VoltageAssignment:
    """A complete voltage map on the directed edges of R(B_H)."""

    k: int
    perms: tuple  # perms[i] = voltage of directed edge i, length 2r

    def __post_init__(self):
        r = len(self.perms) // 2
        for i in range(r):
            if self.perms[i + r] != invert(self.perms[i]):
                raise ConflictingVoltage(
                    f"voltage of edge {i + r} is not the inverse of edge {i}")

    def voltage(self, edge_index: int) -> tuple:
        return self.perms[edge_index]


def directed_edge_key_index(B: BipartiteGraph, key: str) -> int:
    """Resolve an 'origin|terminus' name pair to a directed edge index."""
    if "|" not in key:
        raise BadVoltageKey(f"voltage key {key!r} is not 'origin|terminus'")
    origin, terminus = key.split("|", 1)
    names = B.vertex_names
    try:
        a = names.index(origin)
    except ValueError:
        raise BadVoltageKey(f"unknown vertex {origin!r} in key {key!r}") from None
    try:
        b = names.index(terminus)
    except ValueError:
        raise BadVoltageKey(f"unknown vertex {terminus!r} in key {key!r}") from None
    nv = len(B.part_v)
    if (a < nv) == (b < nv):
        raise BadVoltageKey(
            f"key {key!r} does not join the two parts of the bipartite graph")
    if a < nv:
        pair = (a, b)
        forward = True
    else:
        pair = (b, a)
        forward = False
    try:
        idx = B.edges.index(pair)
    except ValueError:
        raise BadVoltageKey(
            f"no incidence between {origin!r} and {terminus!r}") from None
    return idx if forward else idx + len(B.edges)


def complete_voltage(B: BipartiteGraph, k: int, partial: dict) -> VoltageAssignment:
    """Fill a partial voltage map: unspecified edges get the identity,
    inverse edges get inverse voltages.

    ``partial`` maps directed edge index or 'origin|terminus' key to a
    0-based one-line image tuple.
    """
    if k < 1:
        raise ParseError("fold count k must be >= 1")
    r = B.n_edges
    given: dict[int, tuple] = {}
    for key, img in partial.items():
        idx = key if isinstance(key, int) else directed_edge_key_index(B, key)
        if not 0 <= idx < 2 * r:
            raise BadVoltageKey(f"directed edge index {idx} out of range")
        perm = check_perm(img, k)
        if idx in given and given[idx] != perm:
            raise ConflictingVoltage(f"edge {key!r} assigned twice, inconsistently")
        given[idx] = perm
    perms = [None] * (2 * r)
    for i in range(r):
        a, b = given.get(i), given.get(i + r)
        if a is not None and b is not None and b != invert(a):
            raise ConflictingVoltage(
                f"edges {i} and {i + r} carry non-inverse voltages")
        if a is None and b is not None:
            a = invert(b)
        if a is None:
            a = identity_perm(k)
        perms[i] = a
        perms[i + r] = invert(a)
    return VoltageAssignment(k, tuple(perms))


def voltage_from_dict(B: BipartiteGraph, data) -> VoltageAssignment:
    """Parse the voltage JSON object {"k": 2, "assignments": {...}}."""
    if not isinstance(data, dict):
        raise ParseError("voltage JSON must be an object")
    try:
        k = int(data["k"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f'bad or missing "k": {exc}') from exc
    raw = data.get("assignments", {})
    if not isinstance(raw, dict):
        raise ParseError('"assignments" must be an object')
    partial = {}
    for key, img in raw.items():
        if (not isinstance(img, list)
                or not all(isinstance(x, int) for x in img)):
            raise BadPermutation(f"voltage for {key!r} must be a list of integers")
        partial[key] = tuple(x - 1 for x in img)  # 1-based on the wire
    return complete_voltage(B, k, partial)


def voltage_from_json(B: BipartiteGraph, text: str) -> VoltageAssignment:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return voltage_from_dict(B, data)


# -- the voltage group -----------------------------------------------------

@dataclass(frozen=True)
class GroupTable:
    """Closed list of permutations; identity first, then discovery order."""

    k: int
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "_index",
                           {g: i for i, g in enumerate(self.elements)})

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, g: tuple) -> int:
        return self._index[g]

    def mul(self, i: int, j: int) -> int:
        return self._index[compose(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        return self._index[invert(self.elements[i])]

    def element_orders(self) -> tuple:
        return tuple(sorted(perm_order(g) for g in self.elements))


def group_closure(assignment: VoltageAssignment,
                  cap: int = DEFAULT_GROUP_CAP) -> GroupTable:
    """Breadth-first closure of the voltages under composition."""
    k = assignment.k
    ident = identity_perm(k)
    gens = []
    for g in assignment.perms:
        if g != ident and g not in gens:
            gens.append(g)
    elements = [ident]
    seen = {ident}
    queue = list(elements)
    while queue:
        x = queue.pop(0)
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                if len(elements) >= cap:
                    raise GroupTooLarge(
                        f"voltage group exceeds the order cap {cap}")
                seen.add(y)
                elements.append(y)
                queue.append(y)
    return GroupTable(k, tuple(elements))


# -- summands, derived graph, covering hypergraph --------------------------

def adjacency_summands(B: BipartiteGraph, assignment: VoltageAssignment,
                       group: GroupTable) -> dict:
    """One 0/1 matrix per group element g: entry (i, j) is 1 when the
    directed edge (v_i, v_j) carries voltage g.  Keys are group indices."""
    n = B.n_vertices
    R = symmetric_digraph(B)
    out = {gi: [[0] * n for _ in range(n)] for gi in range(group.order)}
    for e in range(R.n_directed):
        gi = group.index(assignment.voltage(e))
        out[gi][R.origin[e]][R.terminus[e]] = 1
    return out


def derived_graph(B: BipartiteGraph, assignment: VoltageAssignment) -> BipartiteGraph:
    """The k-fold derived graph on V(B_H) x [k].

    Vertex order: copy 1 of every part-V vertex, copy 2, ..., then the same
    for part-E.  Fiber vertices are named 'base^copy' with 1-based copies.
    """
    k = assignment.k
    nv, ne = len(B.part_v), len(B.part_e)
    part_v = tuple(f"{name}^{i + 1}" for i in range(k) for name in B.part_v)
    part_e = tuple(f"{name}^{i + 1}" for i in range(k) for name in B.part_e)
    edges = []
    for idx, (a, b) in enumerate(B.edges):
        g = assignment.voltage(idx)  # voltage of the part-V -> part-E direction
        e_local = b - nv
        for j in range(k):
            vi = g[j] * nv + a
            ei = k * nv + j * ne + e_local
            edges.append((vi, ei))
    return BipartiteGraph(part_v, part_e, tuple(edges))


def covering_hypergraph(derived: BipartiteGraph) -> Hypergraph:
    """Read the derived bipartite graph back as a hypergraph."""
    adj = derived.adjacency_lists()
    nv = len(derived.part_v)
    edges = []
    for j, name in enumerate(derived.part_e):
        members = sorted(adj[nv + j])
        if not members:
            raise EmptyHyperedge(f"derived hyperedge {name!r} has no vertices")
        edges.append((name, tuple(derived.part_v[i] for i in members)))
    return Hypergraph(derived.part_v, tuple(edges))


def permutation_matrix(g: tuple):
    """P(g) with entry 1 at (g(j), j)."""
    k = len(g)
    P = [[0] * k for _ in range(k)]
    for j in range(k):
        P[g[j]][j] = 1
    return P


def kron_int(A, Bm):
    """Kronecker product of integer matrices given as lists of lists."""
    ra, ca = len(A), len(A[0])
    rb, cb = len(Bm), len(Bm[0])
    out = [[0] * (ca * cb) for _ in range(ra * rb)]
    for i in range(ra):
        for j in range(ca):
            a = A[i][j]
            if not a:
                continue
            for p in range(rb):
                for q in range(cb):
                    out[i * rb + p][j * cb + q] = a * Bm[p][q]
    return out


def check_kronecker_identity(B: BipartiteGraph, assignment: VoltageAssignment,
                             group: GroupTable) -> bool:
    """Entrywise comparison of the derived-cover adjacency matrix with
    the voltage-summand Kronecker expansion, in the copy-major basis."""
    k = assignment.k
    nm = B.n_vertices
    nv, ne = len(B.part_v), len(B.part_e)

    # left side: adjacency of the derived graph, basis (copy, base vertex)
    derived = derived_graph(B, assignment)
    size = k * nm
    lhs = [[0] * size for _ in range(size)]

    def copy_major(global_idx: int) -> int:
        if global_idx < k * nv:
            copy, v = divmod(global_idx, nv)
            return copy * nm + v
        rest = global_idx - k * nv
        copy, e = divmod(rest, ne)
        return copy * nm + nv + e

    for a, b in derived.edges:
        i, j = copy_major(a), copy_major(b)
        lhs[i][j] = 1
        lhs[j][i] = 1

    # right side: sum of P(g) (x) A(B_H)_g
    summands = adjacency_summands(B, assignment, group)
    rhs = [[0] * size for _ in range(size)]
    for gi, Ag in summands.items():
        term = kron_int(permutation_matrix(group.elements[gi]), Ag)
        for i in range(size):
            ri = rhs[i]
            ti = term[i]
            for j in range(size):
                ri[j] += ti[j]
    return lhs == rhs
