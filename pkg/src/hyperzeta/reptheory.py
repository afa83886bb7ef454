"""Representations of the voltage group and irreducible multiplicities.

Irreducible representations are inputs here, not computed: builtin catalogs
cover S2, S3 and cyclic groups, and arbitrary groups can be served by a
representation file.  Multiplicities come from character inner products
against the permutation character (= fixed-point count), exactly whenever
exact character values are available.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CatalogIncomplete,
    GroupMismatch,
    NonIntegerMultiplicity,
    NotUnitary,
    ParseError,
)
from .covering import (
    GroupTable,
    check_perm,
    compose,
    fixed_points,
    identity_perm,
    perm_order,
    permutation_matrix,
)
from .scalars import (
    GaussianRational,
    conj_scalar,
    normalize_scalar,
    parse_rational_pair,
    scalar_to_complex,
)

EXACT_FIELDS = ("rational", "gaussian")
MULT_ROUND_TOL = 1e-6


# -- generic small-matrix helpers (entries: exact scalars or complex) ------

def mat_identity(l, one=1):
    return tuple(tuple(one if i == j else 0 * one for j in range(l))
                 for i in range(l))


def mat_mul(A, B):
    l, m, n = len(A), len(B), len(B[0])
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(m))
                       for j in range(n)) for i in range(l))


def mat_trace(A):
    return sum(A[i][i] for i in range(len(A)))


def mat_conj_transpose(A):
    rows, cols = len(A), len(A[0])
    def cj(x):
        return x.conjugate() if isinstance(x, (complex, GaussianRational)) else x
    return tuple(tuple(cj(A[i][j]) for i in range(rows)) for j in range(cols))


def mat_max_abs_diff(A, B) -> float:
    worst = 0.0
    for ra, rb in zip(A, B):
        for a, b in zip(ra, rb):
            worst = max(worst, abs(scalar_to_complex(a) - scalar_to_complex(b)))
    return worst


@dataclass(frozen=True)
class Representation:
    """A matrix representation aligned with a GroupTable's element order.

    ``field`` is 'rational', 'gaussian' or 'complex' (sampled numeric
    entries).  ``chars`` optionally carries exact character values even when
    the matrices themselves are numeric (equal characters under similarity).
    """

    name: str
    degree: int
    field: str
    mats: tuple          # mats[i] = matrix of element i, tuple of tuples
    chars: tuple | None = None

    @property
    def exact(self) -> bool:
        return self.field in EXACT_FIELDS

    def char(self, i: int):
        """Character value of element i; exact if available."""
        if self.chars is not None:
            return self.chars[i]
        return mat_trace(self.mats[i])

    def homomorphism_residual(self, group: GroupTable) -> float:
        worst = 0.0
        n = group.order
        for i in range(n):
            for j in range(n):
                prod = mat_mul(self.mats[i], self.mats[j])
                worst = max(worst,
                            mat_max_abs_diff(prod, self.mats[group.mul(i, j)]))
        return worst

    def unitarity_residual(self) -> float:
        worst = 0.0
        ident = mat_identity(self.degree)
        for M in self.mats:
            worst = max(worst,
                        mat_max_abs_diff(mat_mul(mat_conj_transpose(M), M), ident))
        return worst

    def is_unitary_exact(self) -> bool:
        """Exact unitarity check; only meaningful for exact fields."""
        ident = mat_identity(self.degree)
        for M in self.mats:
            P = mat_mul(mat_conj_transpose(M), M)
            for i in range(self.degree):
                for j in range(self.degree):
                    if normalize_scalar(P[i][j] - ident[i][j]) != 0:
                        return False
        return True

    def require_unitary(self):
        if self.exact:
            if not self.is_unitary_exact():
                raise NotUnitary(f"representation {self.name!r} is not unitary")
        elif self.unitarity_residual() > 1e-10:
            raise NotUnitary(f"representation {self.name!r} is not unitary")


@dataclass(frozen=True)
class IrrepCatalog:
    reps: tuple          # rho_1 trivial first
    source: str          # 'builtin' or 'file'

    @property
    def degrees(self) -> tuple:
        return tuple(r.degree for r in self.reps)

    def __iter__(self):
        return iter(self.reps)


def permutation_representation(group: GroupTable, k: int | None = None) -> Representation:
    """The degree-k 0/1 representation with entry 1 at (g(j), j)."""
    if k is None:
        k = group.k
    if k != group.k:
        raise ValueError("k must equal the group's degree")
    mats = tuple(tuple(tuple(row) for row in permutation_matrix(g))
                 for g in group.elements)
    chars = tuple(fixed_points(g) for g in group.elements)
    return Representation("permutation", k, "rational", mats, chars)


def trivial_representation(group: GroupTable) -> Representation:
    mats = tuple(((1,),) for _ in group.elements)
    chars = tuple(1 for _ in group.elements)
    return Representation("trivial", 1, "rational", mats, chars)


# -- multiplicities --------------------------------------------------------

def multiplicities(catalog: IrrepCatalog, permrep: Representation,
                   group: GroupTable) -> list:
    """m_i = (1/|G|) sum_g trace P(g) * conj(chi_i(g)), rounded exactly or
    (sampled characters) to the nearest integer within a small residual."""
    order = group.order
    traces = [permrep.char(i) for i in range(order)]
    out = []
    for rep in catalog.reps:
        total = 0
        exact = True
        for i in range(order):
            chi = rep.char(i)
            if isinstance(chi, complex):
                exact = False
            total = total + traces[i] * conj_scalar(chi)
        if exact:
            m = Fraction(total, order) if not isinstance(total, Fraction) \
                else total / order
            if m.denominator != 1 or m < 0:
                raise NonIntegerMultiplicity(
                    f"multiplicity of {rep.name!r} is {m}, not a nonnegative integer")
            out.append(int(m))
        else:
            val = complex(total) / order
            m = round(val.real)
            if abs(val - m) > MULT_ROUND_TOL or m < 0:
                raise NonIntegerMultiplicity(
                    f"multiplicity of {rep.name!r} is {val}, "
                    f"residual exceeds {MULT_ROUND_TOL}")
            out.append(int(m))
    k = group.k
    if sum(m * r.degree for m, r in zip(out, catalog.reps)) != k:
        raise CatalogIncomplete(
            f"sum of m_i * f_i = "
            f"{sum(m * r.degree for m, r in zip(out, catalog.reps))} != k = {k}")
    if out[0] < 1:
        raise CatalogIncomplete("trivial multiplicity m_1 must be >= 1")
    return out


# -- builtin catalogs ------------------------------------------------------

def _require_group_shape(group: GroupTable, order: int, element_orders: tuple,
                         kind: str):
    if group.order != order or group.element_orders() != tuple(sorted(element_orders)):
        raise GroupMismatch(
            f"voltage group (order {group.order}, element orders "
            f"{group.element_orders()}) is not {kind}")


def builtin_irreps(kind: str, group: GroupTable) -> IrrepCatalog:
    """Catalogs for S2, S3 and cyclic-n; checked against the actual group."""
    if kind == "S2":
        return _s2_catalog(group)
    if kind == "S3":
        return _s3_catalog(group)
    if kind.startswith("cyclic-"):
        try:
            n = int(kind.split("-", 1)[1])
        except ValueError:
            raise GroupMismatch(f"bad cyclic catalog name {kind!r}") from None
        if n < 1:
            raise GroupMismatch(f"bad cyclic order {n}")
        return _cyclic_catalog(group, n)
    raise GroupMismatch(f"unknown builtin catalog {kind!r}")


def _s2_catalog(group: GroupTable) -> IrrepCatalog:
    _require_group_shape(group, 2, (1, 2), "S2")
    triv = trivial_representation(group)
    mats = []
    chars = []
    for g in group.elements:
        v = 1 if g == identity_perm(group.k) else -1
        mats.append(((v,),))
        chars.append(v)
    sign = Representation("sign", 1, "rational", tuple(mats), tuple(chars))
    return IrrepCatalog((triv, sign), "builtin")


def _s3_catalog(group: GroupTable) -> IrrepCatalog:
    _require_group_shape(group, 6, (1, 2, 2, 2, 3, 3), "S3")
    triv = trivial_representation(group)
    orders = [perm_order(g) for g in group.elements]
    sign_vals = [1 if o in (1, 3) else -1 for o in orders]
    sign = Representation("sign", 1, "rational",
                          tuple(((v,),) for v in sign_vals), tuple(sign_vals))

    # locate generators: b of order 3, a of order 2, then decompose
    bi = orders.index(3)
    ai = orders.index(2)
    e = 0
    words = {e: (), bi: ("b",), group.mul(bi, bi): ("b", "b"),
             ai: ("a",)}
    abi = group.mul(ai, bi)
    abbi = group.mul(ai, group.mul(bi, bi))
    words[abi] = ("a", "b")
    words[abbi] = ("a", "b", "b")
    if len(words) != 6:
        raise GroupMismatch("could not decompose the group as S3")

    # real orthogonal standard representation (sampled-complex entries)
    c, s = -0.5, 3 ** 0.5 / 2
    Rb = ((complex(c), complex(-s)), (complex(s), complex(c)))
    Ra = ((1 + 0j, 0j), (0j, -1 + 0j))
    letter = {"a": Ra, "b": Rb}
    std_mats = []
    for i in range(6):
        M = mat_identity(2, 1 + 0j)
        for w in words[i]:
            M = mat_mul(M, letter[w])
        std_mats.append(M)
    std_chars = tuple(2 if o == 1 else (0 if o == 2 else -1) for o in orders)
    std = Representation("standard", 2, "complex", tuple(std_mats), std_chars)
    return IrrepCatalog((triv, sign, std), "builtin")


def _cyclic_catalog(group: GroupTable, n: int) -> IrrepCatalog:
    _require_group_shape(group, n, tuple(n // _gcd(n, j) for j in range(n)) if n > 1 else (1,),
                         f"cyclic-{n}")
    # generator: any element of order n; discrete logs by iteration
    gen = None
    for g in group.elements:
        if perm_order(g) == n:
            gen = g
            break
    if gen is None:
        raise GroupMismatch(f"group has no element of order {n}")
    log = {}
    cur = identity_perm(group.k)
    for a in range(n):
        log[cur] = a
        cur = compose(cur, gen)
    reps = []
    for j in range(n):
        mats = []
        chars = []
        for g in group.elements:
            a = log[g]
            val = _root_of_unity(j * a % n, n)
            mats.append(((val,),))
            chars.append(val)
        field = ("rational" if n in (1, 2)
                 else "gaussian" if n == 4 else "complex")
        name = "trivial" if j == 0 else f"chi{j}"
        reps.append(Representation(name, 1, field, tuple(mats), tuple(chars)))
    return IrrepCatalog(tuple(reps), "builtin")


def _root_of_unity(a: int, n: int):
    """exp(2*pi*i*a/n); exact for n in {1, 2, 4}."""
    a %= n
    if n == 1:
        return 1
    if n == 2:
        return 1 if a == 0 else -1
    if n == 4:
        return (1, GaussianRational(0, 1), -1, GaussianRational(0, -1))[a]
    return cmath.exp(2j * cmath.pi * a / n)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# -- catalog diagnostics ---------------------------------------------------

@dataclass(frozen=True)
class CatalogDiagnostics:
    hom_residual: float
    unitarity_residual: float
    orthonormality_residual: float
    sum_f_squared: int
    group_order: int

    @property
    def complete(self) -> bool:
        return self.sum_f_squared == self.group_order

    @property
    def ok(self) -> bool:
        return (self.complete and self.hom_residual < 1e-10
                and self.unitarity_residual < 1e-10
                and self.orthonormality_residual < 1e-10)


def check_catalog(catalog: IrrepCatalog, group: GroupTable) -> CatalogDiagnostics:
    hom = max(rep.homomorphism_residual(group) for rep in catalog.reps)
    unit = max(rep.unitarity_residual() for rep in catalog.reps)
    order = group.order
    ortho = 0.0
    for i, ri in enumerate(catalog.reps):
        for j, rj in enumerate(catalog.reps):
            acc = 0j
            for g in range(order):
                acc += (scalar_to_complex(ri.char(g))
                        * scalar_to_complex(rj.char(g)).conjugate())
            acc /= order
            target = 1.0 if i == j else 0.0
            ortho = max(ortho, abs(acc - target))
    fsq = sum(r.degree ** 2 for r in catalog.reps)
    return CatalogDiagnostics(hom, unit, ortho, fsq, order)


# -- representation files --------------------------------------------------

def catalog_from_dict(data, group: GroupTable) -> IrrepCatalog:
    """Parse the representation JSON and align it with ``group``'s order."""
    if not isinstance(data, dict):
        raise ParseError("representation JSON must be an object")
    try:
        gobj = data["group"]
        k = int(gobj["k"])
        raw_elements = gobj["elements"]
        raw_irreps = data["irreps"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad representation file: {exc}") from exc
    if k != group.k:
        raise CatalogIncomplete(
            f"representation file is for k={k}, voltage group has k={group.k}")
    file_elements = [check_perm(tuple(x - 1 for x in img), k)
                     for img in raw_elements]
    position = {}
    for pos, g in enumerate(file_elements):
        if g in position:
            raise ParseError("representation file repeats a group element")
        position[g] = pos
    try:
        align = [position[g] for g in group.elements]
    except KeyError as exc:
        raise CatalogIncomplete(
            f"representation file is missing group element {exc}") from exc
    if len(file_elements) != group.order:
        raise CatalogIncomplete(
            f"representation file has {len(file_elements)} elements, "
            f"group has {group.order}")

    reps = []
    for spec_obj in raw_irreps:
        try:
            name = str(spec_obj["name"])
            degree = int(spec_obj["degree"])
            raw_mats = spec_obj["matrices"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad irrep entry: {exc}") from exc
        if len(raw_mats) != group.order:
            raise ParseError(
                f"irrep {name!r} has {len(raw_mats)} matrices, "
                f"expected {group.order}")
        mats = []
        gaussian = False
        for pos in align:
            raw = raw_mats[pos]
            if len(raw) != degree or any(len(row) != degree for row in raw):
                raise ParseError(f"irrep {name!r} matrix is not {degree}x{degree}")
            M = tuple(tuple(parse_rational_pair(x) for x in row) for row in raw)
            if any(isinstance(x, GaussianRational) for row in M for x in row):
                gaussian = True
            mats.append(M)
        field = "gaussian" if gaussian else "rational"
        reps.append(Representation(name, degree, field, tuple(mats)))
    if not reps:
        raise ParseError("representation file declares no irreps")
    first = reps[0]
    if first.degree != 1 or any(m != ((1,),) for m in first.mats):
        raise CatalogIncomplete(
            "the first irrep in a representation file must be the trivial one")
    return IrrepCatalog(tuple(reps), "file")


def catalog_from_json(text: str, group: GroupTable) -> IrrepCatalog:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return catalog_from_dict(data, group)
