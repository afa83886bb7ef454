"""Brute-force cycle combinatorics: the oracle side of every determinant.

Prime cycles are enumerated directly on the symmetric digraph, canonicalized
by least rotation, and expanded into a truncated Euler product that must
match the determinant reciprocals term by term.  Lyndon words and the
row-selected matrix identity provide the combinatorial half of the edge
determinant's correctness argument.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    BiPoly,
    PolyMatrix,
    TruncatedSeries,
    det_exact,
)
from .covering import GroupTable, VoltageAssignment
from .errors import ExplosionGuard, IncompleteClasses
from .hypergraph import BipartiteGraph, SymmetricDigraph, symmetric_digraph
from .reptheory import Representation, mat_mul
from .zeta import edge_matrices

DEFAULT_CLASS_CAP = 10**6


@dataclass(frozen=True)
class DirectedCycle:
    """A closed edge-index sequence, stored as its least rotation."""

    edges: tuple

    def __len__(self):
        return len(self.edges)


def least_rotation(word: tuple) -> tuple:
    return min(tuple(word[i:] + word[:i]) for i in range(len(word)))


def minimal_period(word: tuple) -> int:
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word == word[p % n:] + word[:p % n]:
            return p
    return n


def cbc(cycle: DirectedCycle, R: SymmetricDigraph) -> int:
    """Cyclic bump count: positions followed by their own inverse edge."""
    w = cycle.edges
    n = len(w)
    return sum(1 for j in range(n)
               if w[(j + 1) % n] == R.inverse_index(w[j]))


@dataclass(frozen=True)
class CycleClasses:
    max_len: int
    items: tuple      # (DirectedCycle, cbc) per equivalence class


def enumerate_prime_cycles(R: SymmetricDigraph, max_len: int,
                           cap: int = DEFAULT_CLASS_CAP) -> CycleClasses:
    """One canonical representative per rotation class of prime cycles of
    length at most max_len.

    Depth-first extension anchored at each starting edge; only edges with
    index >= the anchor may appear, so every class is generated from its
    least edge index and deduplicated by least rotation.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    found = []
    seen = set()
    two_m = R.n_directed

    def extend(word, head):
        if len(word) <= max_len and head == R.origin[word[0]]:
            w = tuple(word)
            if minimal_period(w) == len(w):
                canon = least_rotation(w)
                if canon not in seen:
                    if len(found) >= cap:
                        raise ExplosionGuard(
                            f"prime cycle classes exceed the cap {cap}")
                    seen.add(canon)
                    cyc = DirectedCycle(canon)
                    found.append((cyc, cbc(cyc, R)))
        if len(word) == max_len:
            return
        for e in range(word[0], two_m):
            if R.origin[e] == head:
                word.append(e)
                extend(word, R.terminus[e])
                word.pop()

    for start in range(two_m):
        extend([start], R.terminus[start])
    return CycleClasses(max_len, tuple(found))


def euler_product_series(classes: CycleClasses, order: int) -> TruncatedSeries:
    """Truncated expansion of prod (1 - u^cbc * s^len)^(-1) over the classes."""
    if order > classes.max_len:
        raise IncompleteClasses(
            f"classes enumerated to length {classes.max_len}, "
            f"series order {order} requested")
    acc = TruncatedSeries.one(order)
    for cyc, bumps in classes.items:
        length = len(cyc)
        if length > order:
            continue
        # inverse factor is the geometric series in u^cbc * s^len
        coeffs = [BiPoly.zero() for _ in range(order + 1)]
        j = 0
        while j * length <= order:
            coeffs[j * length] = BiPoly({(bumps * j, 0): 1})
            j += 1
        acc = acc * TruncatedSeries(order, tuple(coeffs))
    return acc


# -- Lyndon words -----------------------------------------------------------

def lyndon_words(alphabet: int, max_len: int) -> list:
    """All Lyndon words over {1..alphabet} of length <= max_len, in
    lexicographic order (sequential generation by rightmost increment)."""
    if alphabet < 1:
        raise ValueError("alphabet must be >= 1")
    out = []
    w = [0]
    while w:
        w[-1] += 1
        out.append(tuple(w))
        m = len(w)
        while len(w) < max_len:
            w.append(w[-m])
        while w and w[-1] == alphabet:
            w.pop()
    return out


def necklace_count(alphabet: int, length: int) -> int:
    """Number of Lyndon words of exactly this length (Moebius sum)."""
    total = 0
    for d in range(1, length + 1):
        if length % d == 0:
            total += _moebius(d) * alphabet ** (length // d)
    return total // length


def _moebius(n: int) -> int:
    if n == 1:
        return 1
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


# -- Amitsur's factorization ------------------------------------------------

def _truncate_s(p: BiPoly, order: int) -> BiPoly:
    return BiPoly({k: v for k, v in p.c.items() if k[1] <= order})


def _det_one_minus(M: PolyMatrix, s_power: int) -> BiPoly:
    """det(I - M * s**s_power); entries of M must be s-free."""
    n = M.rows
    s_mono = BiPoly({(0, s_power): 1})
    rows = []
    for i in range(n):
        rows.append([(BiPoly.one() if i == j else BiPoly.zero())
                     - s_mono * M.at(i, j) for j in range(n)])
    return det_exact(PolyMatrix.from_rows(rows))


def amitsur_check(M_list: list, order: int) -> bool:
    """det(I - (M_1+...+M_k)s) against the product over Lyndon words of
    det(I - M_w s^len), both truncated at the given s order."""
    if not M_list:
        return True
    total = M_list[0]
    for M in M_list[1:]:
        total = total + M
    lhs = _truncate_s(_det_one_minus(total, 1), order)

    rhs = TruncatedSeries.one(order)
    for word in lyndon_words(len(M_list), order):
        Mw = M_list[word[0] - 1]
        for letter in word[1:]:
            Mw = Mw @ M_list[letter - 1]
        factor = _truncate_s(_det_one_minus(Mw, len(word)), order)
        rhs = rhs * TruncatedSeries.from_poly(factor, order)
    return lhs == _truncate_s(rhs.to_poly(), order)


# -- row-selected matrices --------------------------------------------------

def weighted_edge_matrix(B: BipartiteGraph, assignment: VoltageAssignment,
                         rho: Representation, group: GroupTable) -> PolyMatrix:
    """B + uJ over the directed-edge blocks, entries polynomials in u."""
    em = edge_matrices(B, assignment, rho, group)
    size = len(em.B)
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            c = {}
            if em.B[i][j]:
                c[(0, 0)] = em.B[i][j]
            if em.J[i][j]:
                c[(1, 0)] = c.get((1, 0), 0) + em.J[i][j]
            row.append(BiPoly(c))
        rows.append(row)
    return PolyMatrix.from_rows(rows)


def row_selected_matrix(M: PolyMatrix, alpha: int, l: int) -> PolyMatrix:
    """Zero except block-row alpha, which is copied from M."""
    zero = BiPoly.zero()
    rows = []
    for i in range(M.rows):
        if alpha * l <= i < (alpha + 1) * l:
            rows.append([M.at(i, j) for j in range(M.cols)])
        else:
            rows.append([zero] * M.cols)
    return PolyMatrix.from_rows(rows)


def row_selected_check(B: BipartiteGraph, assignment: VoltageAssignment,
                       rho: Representation, group: GroupTable,
                       sequence) -> bool:
    """Check the factor identity for one edge sequence: the determinant of
    I minus the product of row-selected matrices times s^len equals the
    small determinant det(I_l - u^cbc * s^len * rho(voltage product)) when
    the sequence closes head-to-tail, and 1 otherwise."""
    sequence = tuple(sequence)
    if not sequence:
        return True
    R = symmetric_digraph(B)
    l = rho.degree
    M = weighted_edge_matrix(B, assignment, rho, group)

    prod = row_selected_matrix(M, sequence[0], l)
    for alpha in sequence[1:]:
        prod = prod @ row_selected_matrix(M, alpha, l)
    lhs = _det_one_minus(prod, len(sequence))

    closed = all(R.terminus[sequence[j]]
                 == R.origin[sequence[(j + 1) % len(sequence)]]
                 for j in range(len(sequence)))
    if not closed:
        return lhs == BiPoly.one()

    cyc = DirectedCycle(tuple(sequence))
    bumps = cbc(cyc, R)
    rep = rho.mats[group.index(assignment.voltage(sequence[0]))]
    for e in sequence[1:]:
        rep = mat_mul(rep, rho.mats[group.index(assignment.voltage(e))])
    mono = BiPoly({(bumps, len(sequence)): 1})
    rows = []
    for i in range(l):
        rows.append([(BiPoly.one() if i == j else BiPoly.zero())
                     - mono * BiPoly.const(rep[i][j]) for j in range(l)])
    rhs = det_exact(PolyMatrix.from_rows(rows))
    return lhs == rhs
