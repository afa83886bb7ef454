"""Exact bivariate polynomial arithmetic in the variables (u, s).

Internally every graph-level formula lives in s, where s**2 is the
hypergraph variable t; :func:`collapse_to_t` moves to (u, t) at reporting
boundaries and refuses odd powers of s.

The determinant engine is fraction-free Bareiss elimination on polynomial
entries.  When the intermediate term-count work exceeds a budget
(``HYPERZETA_TERM_BUDGET``, default 10**6), it falls back to an
evaluation route: entries are evaluated at the integer point
(u, s) = (2**(L*S), 2**L) chosen from per-variable degree bounds and a
coefficient bound (Kronecker packing), the integer determinant is computed
fraction-free with gmpy2, and the polynomial is recovered exactly from
balanced base-2**L digits.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import divexact, mpz

from .errors import NonSquare, NonUnitConstantTerm, OddPowerOfS
from .scalars import (
    GaussianRational,
    is_gaussian,
    normalize_scalar,
    scalar_to_complex,
    scalar_to_str,
)

DEFAULT_TERM_BUDGET = 10**6


def term_budget() -> int:
    raw = os.environ.get("HYPERZETA_TERM_BUDGET")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_TERM_BUDGET


class BiPoly:
    """Polynomial in (u, s) with exact coefficients.

    Stored as a map (deg_u, deg_s) -> coefficient with no zero entries.
    Immutable by convention: operations return new instances.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = normalize_scalar(v)
                if v:
                    c[(int(k[0]), int(k[1]))] = v
        self.c = c

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(0, 0): 1})

    @classmethod
    def const(cls, value):
        return cls({(0, 0): value})

    @classmethod
    def u(cls):
        return cls({(1, 0): 1})

    @classmethod
    def s(cls):
        return cls({(0, 1): 1})

    # -- basic queries ------------------------------------------------
    def is_zero(self) -> bool:
        return not self.c

    def constant_term(self):
        return self.c.get((0, 0), 0)

    def degree_u(self) -> int:
        return max((k[0] for k in self.c), default=0)

    def degree_s(self) -> int:
        return max((k[1] for k in self.c), default=0)

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.c == other.c
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == BiPoly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __bool__(self):
        return bool(self.c)

    def __repr__(self):
        return f"BiPoly({self.to_text()!r})"

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        c = dict(self.c)
        for k, v in other.c.items():
            w = normalize_scalar(c.get(k, 0) + v)
            if w:
                c[k] = w
            elif k in c:
                del c[k]
        out = BiPoly.__new__(BiPoly)
        out.c = c
        return out

    __radd__ = __add__

    def __neg__(self):
        out = BiPoly.__new__(BiPoly)
        out.c = {k: -v for k, v in self.c.items()}
        return out

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        a, b = self.c, other.c
        if len(a) > len(b):
            a, b = b, a
        c = {}
        for (au, asn), av in a.items():
            for (bu, bs), bv in b.items():
                k = (au + bu, asn + bs)
                w = c.get(k, 0) + av * bv
                if w:
                    c[k] = w
                elif k in c:
                    del c[k]
        out = BiPoly.__new__(BiPoly)
        out.c = {k: normalize_scalar(v) for k, v in c.items() if v}
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a BiPoly")
        result = BiPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- substitution and evaluation ----------------------------------
    def subs_u_zero(self) -> "BiPoly":
        """The Ihara specialization u = 0."""
        return BiPoly({k: v for k, v in self.c.items() if k[0] == 0})

    def eval_exact(self, u_val, s_val):
        """Exact evaluation at rational or Gaussian-rational points."""
        total = 0
        for (a, b), v in self.c.items():
            total = total + v * u_val**a * s_val**b
        return normalize_scalar(total)

    def conjugate(self) -> "BiPoly":
        from .scalars import conj_scalar
        return BiPoly({k: conj_scalar(v) for k, v in self.c.items()})

    # -- printing -----------------------------------------------------
    def sorted_terms(self):
        """Canonical order: total degree ascending, then u-degree descending."""
        return sorted(self.c.items(),
                      key=lambda kv: (kv[0][0] + kv[0][1], -kv[0][0]))

    def to_text(self, s_name: str = "s") -> str:
        if not self.c:
            return "0"
        parts = []
        for (a, b), v in self.sorted_terms():
            factors = []
            if a:
                factors.append("u" if a == 1 else f"u^{a}")
            if b:
                factors.append(s_name if b == 1 else f"{s_name}^{b}")
            neg = False
            if not is_gaussian(v) and not isinstance(v, GaussianRational) and v < 0:
                neg, v = True, -v
            coeff = scalar_to_str(v)
            if factors and coeff == "1":
                body = "*".join(factors)
            elif factors:
                cs = coeff if "+" not in coeff[1:] else f"({coeff})"
                body = "*".join([cs] + factors)
            else:
                body = coeff
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def to_coeff_map(self) -> dict:
        """JSON coefficient map {"a,b": "num/den"} in canonical order."""
        return {f"{a},{b}": scalar_to_str(v)
                for (a, b), v in self.sorted_terms()}


def _coerce(x) -> BiPoly:
    if isinstance(x, BiPoly):
        return x
    if isinstance(x, (int, Fraction, GaussianRational)):
        return BiPoly.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to BiPoly")


def eval_complex(p: BiPoly, u_val: complex, s_val: complex) -> complex:
    """Numeric evaluation; exact coefficients, Horner in s per u-power."""
    by_u: dict[int, dict[int, complex]] = {}
    for (a, b), v in p.c.items():
        by_u.setdefault(a, {})[b] = scalar_to_complex(v)
    total = 0j
    for a, row in by_u.items():
        acc = 0j
        for b in range(max(row), -1, -1):
            acc = acc * s_val + row.get(b, 0j)
        total += acc * u_val**a
    return total


def collapse_to_t(p: BiPoly) -> BiPoly:
    """Substitute s**2 -> t.  Every monomial must have even s-degree."""
    c = {}
    for (a, b), v in p.c.items():
        if b % 2:
            raise OddPowerOfS(
                f"monomial u^{a}*s^{b} has odd s-degree; "
                "hypergraph-level polynomials must be even in s")
        c[(a, b // 2)] = v
    return BiPoly(c)


# ---------------------------------------------------------------------------
# polynomial matrices and exact determinants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major tuple of BiPoly

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows_list) -> "PolyMatrix":
        r = len(rows_list)
        c = len(rows_list[0]) if r else 0
        flat = []
        for row in rows_list:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(_coerce(e) for e in row)
        return cls(r, c, tuple(flat))

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        one, zero = BiPoly.one(), BiPoly.zero()
        return cls(n, n, tuple(one if i == j else zero
                               for i in range(n) for j in range(n)))

    @classmethod
    def from_scalar_rows(cls, rows_list) -> "PolyMatrix":
        return cls.from_rows([[BiPoly.const(e) for e in row]
                              for row in rows_list])

    def at(self, i: int, j: int) -> BiPoly:
        return self.entries[i * self.cols + j]

    def row_lists(self):
        return [list(self.entries[i * self.cols:(i + 1) * self.cols])
                for i in range(self.rows)]

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = BiPoly.zero()
                for k in range(self.cols):
                    a = self.at(i, k)
                    if a.is_zero():
                        continue
                    b = other.at(k, j)
                    if b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix.from_rows(out)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return PolyMatrix(self.rows, self.cols,
                          tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return PolyMatrix(self.rows, self.cols,
                          tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, factor) -> "PolyMatrix":
        f = _coerce(factor)
        return PolyMatrix(self.rows, self.cols,
                          tuple(f * e for e in self.entries))


class _BudgetExceeded(Exception):
    pass


def exact_div(p: BiPoly, d: BiPoly) -> BiPoly:
    """Exact polynomial division p / d; raises ValueError if not exact."""
    if d.is_zero():
        raise ZeroDivisionError("division of BiPoly by zero")
    if p.is_zero():
        return BiPoly.zero()
    # leading term under lex order on (deg_s, deg_u)
    dkey = max(d.c, key=lambda k: (k[1], k[0]))
    dc = d.c[dkey]
    rem = dict(p.c)
    q = {}
    while rem:
        rkey = max(rem, key=lambda k: (k[1], k[0]))
        qa, qs = rkey[0] - dkey[0], rkey[1] - dkey[1]
        if qa < 0 or qs < 0:
            raise ValueError("inexact BiPoly division")
        rc = rem[rkey]
        if isinstance(rc, int) and isinstance(dc, int):
            qc = normalize_scalar(Fraction(rc, dc))
        else:
            qc = normalize_scalar(rc / dc)
        q[(qa, qs)] = qc
        for (da, ds), dv in d.c.items():
            k = (qa + da, qs + ds)
            w = normalize_scalar(rem.get(k, 0) - qc * dv)
            if w:
                rem[k] = w
            elif k in rem:
                del rem[k]
    return BiPoly(q)


def det_exact(M: PolyMatrix) -> BiPoly:
    """Exact determinant of a square BiPoly matrix.

    Result is independent of the internal route; the Bareiss route aborts to
    the evaluation route when its term work exceeds the configured budget.
    """
    if M.rows != M.cols:
        raise NonSquare(f"matrix is {M.rows}x{M.cols}")
    n = M.rows
    if n == 0:
        return BiPoly.one()
    budget = term_budget()
    if _bareiss_cost_estimate(M, budget) > budget:
        return _det_evaluation(M)
    try:
        return _det_bareiss(M, budget=budget)
    except _BudgetExceeded:
        return _det_evaluation(M)


def _bareiss_cost_estimate(M: PolyMatrix, budget: int) -> int:
    """Dry-run of the elimination's term-count growth (no cancellation
    assumed, capped by the dense size), to route hopeless cases straight to
    the evaluation determinant."""
    n = M.rows
    du = sum(max((M.at(i, j).degree_u() for j in range(n)), default=0)
             for i in range(n))
    ds = sum(max((M.at(i, j).degree_s() for j in range(n)), default=0)
             for i in range(n))
    dense = (du + 1) * (ds + 1)
    t = [[len(M.at(i, j).c) for j in range(n)] for i in range(n)]
    work = 0
    for k in range(n - 1):
        piv = max(t[k][k], 1)
        for i in range(k + 1, n):
            tik = t[i][k]
            for j in range(k + 1, n):
                work += t[i][j] * piv + tik * t[k][j]
                if work > budget:
                    return work
                t[i][j] = min(dense, t[i][j] * piv + tik * t[k][j])
    return work


def _det_bareiss(M: PolyMatrix, budget: int) -> BiPoly:
    n = M.rows
    a = [[M.at(i, j) for j in range(n)] for i in range(n)]
    prev = BiPoly.one()
    sign = 1
    work = 0
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return BiPoly.zero()
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                work += len(a[i][j].c) * len(piv.c) + len(aik.c) * len(a[k][j].c)
                if work > budget:
                    raise _BudgetExceeded
                num = a[i][j] * piv - aik * a[k][j]
                a[i][j] = exact_div(num, prev) if k else num
            a[i][k] = BiPoly.zero()
        prev = piv
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def _scalar_parts(c):
    """(re, im) as Fractions for any exact scalar."""
    if isinstance(c, GaussianRational):
        return Fraction(c.re), Fraction(c.im)
    return Fraction(c), Fraction(0)


def _det_evaluation(M: PolyMatrix) -> BiPoly:
    """Evaluation route: Kronecker packing + integer Bareiss + exact unpacking."""
    n = M.rows
    rows = M.row_lists()
    # clear denominators row by row; determinant divides by the product
    scale = Fraction(1)
    int_rows = []
    gaussian = False
    for row in rows:
        den = 1
        for e in row:
            for v in e.c.values():
                re, im = _scalar_parts(v)
                for f in (re, im):
                    if f.denominator != 1:
                        den = den * f.denominator // _gcd(den, f.denominator)
        scale *= den
        new_row = []
        for e in row:
            coeffs = {}
            for k, v in e.c.items():
                re, im = _scalar_parts(v)
                re, im = re * den, im * den
                assert re.denominator == 1 and im.denominator == 1
                coeffs[k] = (int(re), int(im))
                if im:
                    gaussian = True
            new_row.append(coeffs)
        int_rows.append(new_row)

    # per-variable degree bounds and coefficient 1-norm bound
    du_bound = ds_bound = 0
    bound = 1
    for row in int_rows:
        keys = [k for e in row for k in e]
        if not keys:
            return BiPoly.zero()
        du_bound += max(k[0] for k in keys)
        ds_bound += max(k[1] for k in keys)
        bound *= max(1, sum(abs(re) + abs(im)
                            for e in row for re, im in e.values()))
    L = bound.bit_length() + 2
    S = ds_bound + 1

    def pack(coeffs, part):
        v = 0
        for (a, b), pair in coeffs.items():
            c = pair[part]
            if c:
                v += c << (L * (a * S + b))
        return mpz(v)

    re_m = [[pack(e, 0) for e in row] for row in int_rows]
    if gaussian:
        im_m = [[pack(e, 1) for e in row] for row in int_rows]
        det_re, det_im = _bareiss_gaussian_int(re_m, im_m)
        coeffs = _unpack(det_re, L, S)
        for k, v in _unpack(det_im, L, S).items():
            re = coeffs.pop(k, 0)
            coeffs[k] = GaussianRational(re, v)
    else:
        coeffs = _unpack(_bareiss_int(re_m), L, S)
    inv = 1 / scale
    return BiPoly({k: v * inv for k, v in coeffs.items()})


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _bareiss_int(E):
    n = len(E)
    prev = mpz(1)
    sign = 1
    zero = mpz(0)
    for k in range(n - 1):
        if E[k][k] == zero:
            for i in range(k + 1, n):
                if E[i][k] != zero:
                    E[k], E[i] = E[i], E[k]
                    sign = -sign
                    break
            else:
                return zero
        piv = E[k][k]
        for i in range(k + 1, n):
            Eik = E[i][k]
            Ei, Ek = E[i], E[k]
            for j in range(k + 1, n):
                Ei[j] = divexact(Ei[j] * piv - Eik * Ek[j], prev)
        prev = piv
    return sign * E[n - 1][n - 1]


def _bareiss_gaussian_int(RE, IM):
    n = len(RE)
    prev = (mpz(1), mpz(0))
    sign = 1
    zero = mpz(0)

    def gmul(x, y):
        return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def gdivexact(x, y):
        nrm = y[0] * y[0] + y[1] * y[1]
        return (divexact(x[0] * y[0] + x[1] * y[1], nrm),
                divexact(x[1] * y[0] - x[0] * y[1], nrm))

    E = [[(RE[i][j], IM[i][j]) for j in range(n)] for i in range(n)]
    for k in range(n - 1):
        if E[k][k] == (zero, zero):
            for i in range(k + 1, n):
                if E[i][k] != (zero, zero):
                    E[k], E[i] = E[i], E[k]
                    sign = -sign
                    break
            else:
                return zero, zero
        piv = E[k][k]
        for i in range(k + 1, n):
            Eik = E[i][k]
            Ei, Ek = E[i], E[k]
            for j in range(k + 1, n):
                num = gmul(Ei[j], piv)
                sub = gmul(Eik, Ek[j])
                Ei[j] = gdivexact((num[0] - sub[0], num[1] - sub[1]), prev)
        prev = piv
    dre, dim = E[n - 1][n - 1]
    return (sign * dre, sign * dim)


def _unpack(value, L, S):
    """Balanced base-2**L digits back to a coefficient dict."""
    coeffs = {}
    v = int(value)
    idx = 0
    half = 1 << (L - 1)
    mask = (1 << L) - 1
    while v:
        r = v & mask
        if r >= half:
            r -= 1 << L
        if r:
            a, b = divmod(idx, S)
            coeffs[(a, b)] = r
        v = (v - r) >> L
        idx += 1
    return coeffs


# ---------------------------------------------------------------------------
# truncated power series in s with polynomial-in-u coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedSeries:
    """Series in s modulo s**(order+1); coefficients are polynomials in u."""

    order: int
    coeffs: tuple  # tuple of BiPoly (u-only), length order + 1

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        if len(self.coeffs) != self.order + 1:
            raise ValueError("coefficient list length must be order + 1")
        for c in self.coeffs:
            if c.degree_s():
                raise ValueError("series coefficients must be u-only")

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls(order, tuple([BiPoly.one()]
                                + [BiPoly.zero()] * order))

    @classmethod
    def from_poly(cls, p: BiPoly, order: int) -> "TruncatedSeries":
        buckets = [dict() for _ in range(order + 1)]
        for (a, b), v in p.c.items():
            if b <= order:
                buckets[b][(a, 0)] = v
        return cls(order, tuple(BiPoly(b) for b in buckets))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        out = [BiPoly.zero() for _ in range(order + 1)]
        for i, a in enumerate(self.coeffs[:order + 1]):
            if a.is_zero():
                continue
            for j in range(order + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(order, tuple(out))

    def to_poly(self) -> BiPoly:
        acc = BiPoly.zero()
        for b, coeff in enumerate(self.coeffs):
            acc = acc + coeff * BiPoly({(0, b): 1})
        return acc


def series_inverse(p: BiPoly, order: int) -> TruncatedSeries:
    """q with p*q = 1 modulo s**(order+1); needs constant term exactly 1."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    p_series = TruncatedSeries.from_poly(p, order)
    if p_series.coeffs[0] != BiPoly.one():
        raise NonUnitConstantTerm(
            "series inversion requires s-constant term exactly 1")
    q = [BiPoly.one()]
    for k in range(1, order + 1):
        acc = BiPoly.zero()
        for j in range(1, k + 1):
            pj = p_series.coeffs[j]
            if not pj.is_zero():
                acc = acc + pj * q[k - j]
        q.append(-acc)
    return TruncatedSeries(order, tuple(q))
