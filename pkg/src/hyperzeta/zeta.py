"""Zeta and L-function reciprocals by determinant routes, and their checks.

Everything at graph level is a polynomial in (u, s); the hypergraph variable
is t = s**2 and appears only after :func:`collapse_to_t` at reporting
boundaries.  Two independent determinant routes exist for every L-function
(an edge-indexed one and a vertex-indexed one); agreement between them, and
the product decomposition of a cover's zeta into base L-functions, are the
identities this module verifies.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .algebra import BiPoly, PolyMatrix, collapse_to_t, det_exact, eval_complex
from .covering import (
    GroupTable,
    VoltageAssignment,
    adjacency_summands,
    covering_hypergraph,
    derived_graph,
)
from .errors import CoverInvalid, NotUnitary, PreconditionFailed
from .hypergraph import (
    BipartiteGraph,
    Hypergraph,
    adjacency_matrix,
    bipartite_graph,
    symmetric_digraph,
    validate_hypergraph,
)
from .reptheory import (
    IrrepCatalog,
    Representation,
    mat_mul,
    multiplicities,
    permutation_representation,
)
from .scalars import conj_scalar, scalar_to_complex

SAMPLE_RADIUS = 0.6


def cover_prefactor() -> BiPoly:
    """1 - (1-u)**2 * s**2."""
    return BiPoly({(0, 0): 1, (0, 2): -1, (1, 2): 2, (2, 2): -1})


def _vertex_form_matrix(S, degrees, l: int) -> PolyMatrix:
    """I - s*S + (1-u)*s**2*(I_l (x) (D - (1-u)I)) as a PolyMatrix.

    ``S`` is an (l*n) x (l*n) scalar matrix whose inner index runs over the
    n graph vertices; ``degrees`` are those vertices' degrees.
    """
    n = len(degrees)
    size = l * n
    rows = []
    for i in range(size):
        d = degrees[i % n]
        row = []
        for j in range(size):
            c = {}
            v = S[i][j]
            if v:
                c[(0, 1)] = -v
            if i == j:
                c[(0, 0)] = 1
                # (1-u)(d - (1-u)) expands to (d-1) + (2-d)u - u**2
                c[(0, 2)] = c.get((0, 2), 0) + (d - 1)
                c[(1, 2)] = 2 - d
                c[(2, 2)] = -1
            row.append(BiPoly(c))
        rows.append(row)
    return PolyMatrix.from_rows(rows)


def graph_zeta_reciprocal(B: BipartiteGraph) -> BiPoly:
    """The graph-level zeta reciprocal of B in (u, s):

    (1 - (1-u)**2 s**2)**(m-n) * det(I - s*A + (1-u)s**2 (D - (1-u)I)).
    """
    n, m = B.n_vertices, B.n_edges
    A = adjacency_matrix(B)
    degrees = [sum(row) for row in A]
    det = det_exact(_vertex_form_matrix(A, degrees, 1))
    return cover_prefactor() ** (m - n) * det


@dataclass(frozen=True)
class RouteComparison:
    pair: str
    ok: bool
    residual: float | None = None


@dataclass(frozen=True)
class ZetaReport:
    reciprocal: BiPoly        # in (u, t)
    reciprocal_s: BiPoly      # in (u, s), pre-collapse
    route: str
    mode: str
    comparisons: tuple = ()

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.comparisons)

    def ihara_reciprocal(self) -> BiPoly:
        return self.reciprocal.subs_u_zero()


def bartholdi_zeta(H: Hypergraph) -> ZetaReport:
    """Zeta reciprocal of a hypergraph via the vertex determinant on its
    incidence bipartite graph."""
    diag = validate_hypergraph(H)
    if not diag.ok:
        raise PreconditionFailed("; ".join(diag.failures()))
    recip_s = graph_zeta_reciprocal(bipartite_graph(H))
    return ZetaReport(collapse_to_t(recip_s), recip_s, "vertex", "exact")


# -- edge-indexed matrices --------------------------------------------------

@dataclass(frozen=True)
class EdgeMatrices:
    """The four block matrices over the directed edges of the symmetric
    digraph, with l x l blocks of representation values.

    Block (a, b) of B is rho(voltage(a)) when edge a's head meets edge b's
    tail and b is not a's inverse; of J when b is exactly a's inverse; of K
    when vertex b is edge a's head; L has identity blocks at (a, o(a)).
    """

    l: int
    B: tuple
    J: tuple
    K: tuple
    L: tuple


def _zeros(rows: int, cols: int):
    return [[0] * cols for _ in range(rows)]


def _place(M, bi: int, bj: int, block, l: int):
    for p in range(l):
        row = M[bi * l + p]
        for q in range(l):
            row[bj * l + q] = block[p][q]


def edge_matrices(B: BipartiteGraph, assignment: VoltageAssignment,
                  rho: Representation, group: GroupTable) -> EdgeMatrices:
    R = symmetric_digraph(B)
    two_m, n, l = R.n_directed, B.n_vertices, rho.degree
    blocks = [rho.mats[group.index(assignment.voltage(e))]
              for e in range(two_m)]
    ident = tuple(tuple(1 if p == q else 0 for q in range(l))
                  for p in range(l))
    Bm = _zeros(two_m * l, two_m * l)
    Jm = _zeros(two_m * l, two_m * l)
    Km = _zeros(two_m * l, n * l)
    Lm = _zeros(two_m * l, n * l)
    for a in range(two_m):
        head = R.terminus[a]
        inv_a = R.inverse_index(a)
        for b in range(two_m):
            if R.origin[b] == head:
                _place(Jm if b == inv_a else Bm, a, b, blocks[a], l)
        _place(Km, a, head, blocks[a], l)
        _place(Lm, a, R.origin[a], ident, l)
    freeze = lambda M: tuple(tuple(row) for row in M)
    return EdgeMatrices(l, freeze(Bm), freeze(Jm), freeze(Km), freeze(Lm))


# -- L-function routes ------------------------------------------------------

def _require_exact(rho: Representation):
    if not rho.exact:
        raise PreconditionFailed(
            f"representation {rho.name!r} has sampled numeric entries; "
            "use the numeric evaluators")


def lfunction_edge(B: BipartiteGraph, assignment: VoltageAssignment,
                   rho: Representation, group: GroupTable) -> BiPoly:
    """det(I - s(B + uJ)) over the directed-edge block matrices, in (u, s)."""
    _require_exact(rho)
    em = edge_matrices(B, assignment, rho, group)
    size = len(em.B)
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            c = {}
            if em.B[i][j]:
                c[(0, 1)] = -em.B[i][j]
            if em.J[i][j]:
                c[(1, 1)] = -em.J[i][j]
            if i == j:
                c[(0, 0)] = 1
            row.append(BiPoly(c))
        rows.append(row)
    return det_exact(PolyMatrix.from_rows(rows))


def rep_adjacency_sum(B: BipartiteGraph, assignment: VoltageAssignment,
                      rho: Representation, group: GroupTable):
    """sum over g of rho(g) (x) A_g, an (l*n) x (l*n) scalar matrix."""
    n, l = B.n_vertices, rho.degree
    summands = adjacency_summands(B, assignment, group)
    S = _zeros(l * n, l * n)
    for gi, Ag in summands.items():
        M = rho.mats[gi]
        for p in range(l):
            for q in range(l):
                v = M[p][q]
                if not v:
                    continue
                for i in range(n):
                    row = S[p * n + i]
                    Ai = Ag[i]
                    for j in range(n):
                        if Ai[j]:
                            row[q * n + j] += v * Ai[j]
    return S


def lfunction_vertex(B: BipartiteGraph, assignment: VoltageAssignment,
                     rho: Representation, group: GroupTable) -> BiPoly:
    """The vertex-indexed route:
    (1-(1-u)**2 s**2)**((m-n)l) * det(I - s*sum rho(g)(x)A_g + diagonal term).
    """
    _require_exact(rho)
    rho.require_unitary()
    n, m, l = B.n_vertices, B.n_edges, rho.degree
    S = rep_adjacency_sum(B, assignment, rho, group)
    degrees = [sum(row) for row in adjacency_matrix(B)]
    det = det_exact(_vertex_form_matrix(S, degrees, l))
    return cover_prefactor() ** ((m - n) * l) * det


def decomposition_factor(B: BipartiteGraph, assignment: VoltageAssignment,
                         rho: Representation, group: GroupTable) -> BiPoly:
    """det(I - s*sum rho(g)(x)A_g + (1-u)s**2(I_l (x) (D-(1-u)I))), the
    cover-decomposition factor of a nontrivial irreducible (no prefactor)."""
    _require_exact(rho)
    S = rep_adjacency_sum(B, assignment, rho, group)
    degrees = [sum(row) for row in adjacency_matrix(B)]
    return det_exact(_vertex_form_matrix(S, degrees, rho.degree))


def decomposition_factors(B: BipartiteGraph, assignment: VoltageAssignment,
                          catalog: IrrepCatalog, group: GroupTable,
                          mults) -> dict:
    """One factor per nontrivial irreducible with positive multiplicity."""
    out = {}
    for i, rho in enumerate(catalog.reps):
        if i == 0 or mults[i] == 0:
            continue
        rho.require_unitary()
        out[i] = decomposition_factor(B, assignment, rho, group)
    return out


# -- numeric evaluators (sampled-complex representations) -------------------

def _numeric_matrix(M) -> np.ndarray:
    return np.array([[scalar_to_complex(x) for x in row] for row in M],
                    dtype=complex)


def lfunction_edge_at(em: EdgeMatrices, u_val: complex, s_val: complex) -> complex:
    Bn = _numeric_matrix(em.B)
    Jn = _numeric_matrix(em.J)
    size = Bn.shape[0]
    return complex(np.linalg.det(np.eye(size) - s_val * (Bn + u_val * Jn)))


def lfunction_vertex_at(B: BipartiteGraph, assignment: VoltageAssignment,
                        rho: Representation, group: GroupTable,
                        u_val: complex, s_val: complex) -> complex:
    n, m, l = B.n_vertices, B.n_edges, rho.degree
    S = _numeric_matrix(rep_adjacency_sum(B, assignment, rho, group))
    degrees = [sum(row) for row in adjacency_matrix(B)]
    D = np.diag([float(degrees[i % n]) for i in range(l * n)])
    M = (np.eye(l * n) - s_val * S
         + (1 - u_val) * s_val**2 * (D - (1 - u_val) * np.eye(l * n)))
    pref = (1 - (1 - u_val) ** 2 * s_val**2) ** ((m - n) * l)
    return complex(pref * np.linalg.det(M))


def sample_points(count: int, rng: random.Random):
    """Random complex (u, s) pairs inside a small disc."""
    def point():
        return complex(rng.uniform(-SAMPLE_RADIUS, SAMPLE_RADIUS),
                       rng.uniform(-SAMPLE_RADIUS, SAMPLE_RADIUS))
    return [(point(), point()) for _ in range(count)]


def relative_residual(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


# -- decomposition verification ---------------------------------------------

@dataclass(frozen=True)
class FactorReport:
    index: int
    name: str
    degree: int
    multiplicity: int
    mode: str


@dataclass(frozen=True)
class DecompositionReport:
    cover: Hypergraph
    group_order: int
    mults: tuple
    mode: str                 # 'exact' or 'sampled'
    factors: tuple            # FactorReport per irreducible
    lhs: BiPoly               # cover zeta reciprocal in (u, t)
    rhs: BiPoly | None        # product of L-reciprocals (exact mode only)
    ok: bool
    max_residual: float       # 0.0 in exact mode
    samples: int = 0

    @property
    def comparisons(self):
        label = ("cover-zeta = product-of-L (exact)" if self.mode == "exact"
                 else "cover-zeta = product-of-L (sampled)")
        return (RouteComparison(label, self.ok, self.max_residual),)


def verify_decomposition(H: Hypergraph, assignment: VoltageAssignment,
                         catalog: IrrepCatalog, group: GroupTable | None = None,
                         samples: int = 25, tol: float = 1e-8,
                         seed: int = 0) -> DecompositionReport:
    """Check that the cover's zeta reciprocal equals the product of the base
    L-function reciprocals raised to the irreducible multiplicities.

    The left side always comes from the vertex determinant on the cover's
    own incidence graph; the right side from per-irreducible edge
    determinants on the base, so the two routes share no code path.
    """
    diag = validate_hypergraph(H)
    if not diag.ok:
        raise PreconditionFailed("; ".join(diag.failures()))
    B = bipartite_graph(H)
    if group is None:
        from .covering import group_closure
        group = group_closure(assignment)
    mults = multiplicities(catalog, permutation_representation(group), group)

    derived = derived_graph(B, assignment)
    Hbar = covering_hypergraph(derived)
    cover_diag = validate_hypergraph(Hbar)
    if cover_diag.loops or cover_diag.low_incidence:
        raise CoverInvalid("; ".join(cover_diag.failures()))

    lhs_s = graph_zeta_reciprocal(bipartite_graph(Hbar))
    lhs_t = collapse_to_t(lhs_s)

    active = [(i, rho) for i, rho in enumerate(catalog.reps) if mults[i] > 0]
    for _, rho in active:
        rho.require_unitary()
    exact = all(rho.exact for _, rho in active)
    factors = tuple(FactorReport(i, rho.name, rho.degree, mults[i],
                                 "exact" if rho.exact else "sampled")
                    for i, rho in active)

    if exact:
        rhs_s = BiPoly.one()
        for i, rho in active:
            rhs_s = rhs_s * lfunction_edge(B, assignment, rho, group) ** mults[i]
        ok = lhs_s == rhs_s
        return DecompositionReport(Hbar, group.order, tuple(mults), "exact",
                                   factors, lhs_t, collapse_to_t(rhs_s),
                                   ok, 0.0)

    rng = random.Random(seed)
    ems = {i: edge_matrices(B, assignment, rho, group) for i, rho in active}
    worst = 0.0
    for u_val, s_val in sample_points(samples, rng):
        lhs_val = eval_complex(lhs_s, u_val, s_val)
        rhs_val = 1 + 0j
        for i, _ in active:
            rhs_val *= lfunction_edge_at(ems[i], u_val, s_val) ** mults[i]
        worst = max(worst, relative_residual(lhs_val, rhs_val))
    return DecompositionReport(Hbar, group.order, tuple(mults), "sampled",
                               factors, lhs_t, None, worst < tol, worst,
                               samples)


def check_factor_identity(H: Hypergraph, assignment: VoltageAssignment,
                          catalog: IrrepCatalog, group: GroupTable,
                          mults) -> bool:
    """Exact check of the cover identity in factored form: the cover's
    reciprocal equals base**m_1 times the prefactor bookkeeping times the
    product of the nontrivial factors, each exponent recomputed, never
    cancelled."""
    B = bipartite_graph(H)
    k = assignment.k
    n, m = B.n_vertices, B.n_edges
    derived = derived_graph(B, assignment)
    Hbar = covering_hypergraph(derived)
    lhs = graph_zeta_reciprocal(bipartite_graph(Hbar))

    base = graph_zeta_reciprocal(B)
    rhs = base ** mults[0]
    rhs = rhs * cover_prefactor() ** ((k - mults[0]) * (m - n))
    for i, factor in decomposition_factors(B, assignment, catalog,
                                           group, mults).items():
        rhs = rhs * factor ** mults[i]
    return lhs == rhs


# -- matrix identity suite --------------------------------------------------

@dataclass(frozen=True)
class IdentitySuite:
    product_kl: bool          # K * transpose(L) == B + J
    product_lk: bool          # transpose(L) * K == sum A_g (x) rho(g)
    gram_k: bool              # conj-transpose(K) * K == D (x) I_l
    product_kk: bool          # K * conj-transpose(K) == B*J + I
    involution_j: bool        # J * J == I
    det_j: bool               # det(I - (1-u)sJ) == (1-(1-u)^2 s^2)^(ml)
    kron_swap: bool           # commutation conjugation swaps factor order

    def all_pass(self) -> bool:
        return all((self.product_kl, self.product_lk, self.gram_k,
                    self.product_kk, self.involution_j, self.det_j,
                    self.kron_swap))

    def as_dict(self) -> dict:
        return {"K*tL=B+J": self.product_kl,
                "tL*K=sum(A_g(x)rho(g))": self.product_lk,
                "tK~*K=D(x)I": self.gram_k,
                "K*tK~=BJ+I": self.product_kk,
                "J^2=I": self.involution_j,
                "det(I-(1-u)sJ)=(1-(1-u)^2s^2)^ml": self.det_j,
                "kronecker-swap": self.kron_swap}


def _transpose(M):
    return tuple(tuple(M[i][j] for i in range(len(M)))
                 for j in range(len(M[0])))


def _conj_transpose(M):
    return tuple(tuple(conj_scalar(M[i][j]) for i in range(len(M)))
                 for j in range(len(M[0])))


def _mat_eq(A, Bm) -> bool:
    if len(A) != len(Bm) or len(A[0]) != len(Bm[0]):
        return False
    return all(a == b for ra, rb in zip(A, Bm) for a, b in zip(ra, rb))


def _mat_add(A, Bm):
    return tuple(tuple(a + b for a, b in zip(ra, rb))
                 for ra, rb in zip(A, Bm))


def _scalar_identity(size: int):
    return tuple(tuple(1 if i == j else 0 for j in range(size))
                 for i in range(size))


def kron_scalar(A, Bm):
    ra, ca, rb, cb = len(A), len(A[0]), len(Bm), len(Bm[0])
    out = [[0] * (ca * cb) for _ in range(ra * rb)]
    for i in range(ra):
        for j in range(ca):
            a = A[i][j]
            if not a:
                continue
            for p in range(rb):
                for q in range(cb):
                    if Bm[p][q]:
                        out[i * rb + p][j * cb + q] = a * Bm[p][q]
    return tuple(tuple(row) for row in out)


def matrix_identity_suite(B: BipartiteGraph, assignment: VoltageAssignment,
                          rho: Representation, group: GroupTable) -> IdentitySuite:
    """Exact evaluation of the seven block-matrix identities that underlie
    the equivalence of the edge and vertex determinant routes."""
    _require_exact(rho)
    if not rho.is_unitary_exact():
        raise NotUnitary(f"identity suite needs a unitary rep, got {rho.name!r}")
    em = edge_matrices(B, assignment, rho, group)
    n, m, l = B.n_vertices, B.n_edges, rho.degree
    summands = adjacency_summands(B, assignment, group)

    tL = _transpose(em.L)
    tKc = _conj_transpose(em.K)
    big_i = _scalar_identity(2 * m * l)

    product_kl = _mat_eq(mat_mul(em.K, tL), _mat_add(em.B, em.J))

    ag_rho = [[0] * (n * l) for _ in range(n * l)]
    for gi, Ag in summands.items():
        term = kron_scalar(Ag, rho.mats[gi])
        for i in range(n * l):
            tgt = ag_rho[i]
            for j in range(n * l):
                if term[i][j]:
                    tgt[j] += term[i][j]
    product_lk = _mat_eq(mat_mul(tL, em.K),
                         tuple(tuple(row) for row in ag_rho))

    degrees = [sum(row) for row in adjacency_matrix(B)]
    D = tuple(tuple(degrees[i] if i == j else 0 for j in range(n))
              for i in range(n))
    gram_k = _mat_eq(mat_mul(tKc, em.K), kron_scalar(D, _scalar_identity(l)))

    product_kk = _mat_eq(mat_mul(em.K, tKc),
                         _mat_add(mat_mul(em.B, em.J), big_i))

    involution_j = _mat_eq(mat_mul(em.J, em.J), big_i)

    size = 2 * m * l
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            c = {(0, 0): 1} if i == j else {}
            v = em.J[i][j]
            if v:
                # -(1-u)s * J entry
                c[(0, 1)] = c.get((0, 1), 0) - v
                c[(1, 1)] = v
            row.append(BiPoly(c))
        rows.append(row)
    det_j = det_exact(PolyMatrix.from_rows(rows)) == cover_prefactor() ** (m * l)

    # commutation matrix P with P (A (x) rho) P^T = rho (x) A
    P = [[0] * (n * l) for _ in range(n * l)]
    for a in range(n):
        for b in range(l):
            P[b * n + a][a * l + b] = 1
    P = tuple(tuple(row) for row in P)
    rho_ag = [[0] * (n * l) for _ in range(n * l)]
    for gi, Ag in summands.items():
        term = kron_scalar(rho.mats[gi], Ag)
        for i in range(n * l):
            for j in range(n * l):
                if term[i][j]:
                    rho_ag[i][j] += term[i][j]
    kron_swap = _mat_eq(mat_mul(mat_mul(P, tuple(tuple(r) for r in ag_rho)),
                                _transpose(P)),
                        tuple(tuple(r) for r in rho_ag))

    return IdentitySuite(product_kl, product_lk, gram_k, product_kk,
                         involution_j, det_j, kron_swap)
