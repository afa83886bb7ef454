import random
from fractions import Fraction

import pytest

from hyperzeta.algebra import (
    BiPoly,
    PolyMatrix,
    TruncatedSeries,
    collapse_to_t,
    det_exact,
    eval_complex,
    exact_div,
    series_inverse,
    _det_evaluation,
)
from hyperzeta.errors import NonSquare, NonUnitConstantTerm, OddPowerOfS
from hyperzeta.scalars import GaussianRational


def random_poly(rng, terms=4, coeff=9, deg=3, gaussian=False):
    c = {}
    for _ in range(rng.randint(0, terms)):
        v = rng.randint(-coeff, coeff)
        if gaussian and rng.random() < 0.5:
            v = GaussianRational(v, rng.randint(-coeff, coeff))
        c[(rng.randint(0, deg), rng.randint(0, deg))] = v
    return BiPoly(c)


def naive_det(rows):
    """Cofactor expansion; the slow but independent determinant oracle."""
    n = len(rows)
    if n == 0:
        return BiPoly.one()
    if n == 1:
        return rows[0][0]
    acc = BiPoly.zero()
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * naive_det(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def test_arithmetic_against_evaluation_oracle():
    rng = random.Random(3)
    for _ in range(300):
        p, q = random_poly(rng), random_poly(rng)
        u0, s0 = rng.randint(-5, 5), rng.randint(-5, 5)
        assert (p + q).eval_exact(u0, s0) == p.eval_exact(u0, s0) + q.eval_exact(u0, s0)
        assert (p * q).eval_exact(u0, s0) == p.eval_exact(u0, s0) * q.eval_exact(u0, s0)
        assert (p - q) + q == p
        assert (p ** 3) == p * p * p


def test_eval_complex_matches_exact():
    rng = random.Random(4)
    for _ in range(50):
        p = random_poly(rng)
        u0 = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        s0 = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        # straightforward monomial-sum oracle
        total = 0j
        for (a, b), v in p.c.items():
            cv = complex(v) if isinstance(v, GaussianRational) else complex(v)
            total += cv * u0 ** a * s0 ** b
        assert abs(eval_complex(p, u0, s0) - total) < 1e-9


def test_subs_and_collapse():
    p = BiPoly({(0, 0): 1, (2, 2): -3, (1, 4): 5})
    assert collapse_to_t(p) == BiPoly({(0, 0): 1, (2, 1): -3, (1, 2): 5})
    assert p.subs_u_zero() == BiPoly({(0, 0): 1})
    with pytest.raises(OddPowerOfS):
        collapse_to_t(BiPoly({(0, 3): 1}))


def test_to_text_and_coeff_map():
    p = BiPoly({(0, 0): -1, (1, 1): 2, (0, 2): Fraction(1, 2)})
    assert p.to_text() == "-1 + 2*u*s + 1/2*s^2"
    assert p.to_text("t") == "-1 + 2*u*t + 1/2*t^2"
    assert p.to_coeff_map() == {"0,0": "-1", "1,1": "2", "0,2": "1/2"}


def test_exact_div_roundtrip():
    rng = random.Random(11)
    done = 0
    while done < 100:
        p, d = random_poly(rng), random_poly(rng, gaussian=True)
        if d.is_zero():
            continue
        assert exact_div(p * d, d) == p
        done += 1
    with pytest.raises(ValueError):
        exact_div(BiPoly({(0, 1): 1}), BiPoly({(1, 0): 1, (0, 0): 1}))


def _det_both_routes(rows, monkeypatch):
    M = PolyMatrix.from_rows(rows)
    bareiss = det_exact(M)
    evaluated = _det_evaluation(M)
    assert bareiss == evaluated
    return bareiss


def test_det_against_cofactor_oracle(monkeypatch):
    rng = random.Random(5)
    for n in (1, 2, 3, 4):
        for _ in range(12):
            rows = [[random_poly(rng, terms=3, deg=2) for _ in range(n)]
                    for _ in range(n)]
            assert _det_both_routes(rows, monkeypatch) == naive_det(rows)


def test_det_gaussian_and_rational_entries():
    rng = random.Random(6)
    for _ in range(25):
        n = rng.randint(1, 3)
        rows = [[random_poly(rng, terms=3, deg=2, gaussian=True)
                 for _ in range(n)] for _ in range(n)]
        # sprinkle rational coefficients
        rows[0][0] = rows[0][0] + BiPoly({(1, 1): Fraction(1, 3)})
        M = PolyMatrix.from_rows(rows)
        assert det_exact(M) == naive_det(rows)
        assert _det_evaluation(M) == naive_det(rows)


def test_det_budget_fallback_consistency(monkeypatch):
    rng = random.Random(8)
    rows = [[random_poly(rng, terms=4, deg=3) for _ in range(5)]
            for _ in range(5)]
    M = PolyMatrix.from_rows(rows)
    full = det_exact(M)
    monkeypatch.setenv("HYPERZETA_TERM_BUDGET", "1")
    assert det_exact(M) == full


def test_det_shapes_and_degenerate():
    with pytest.raises(NonSquare):
        det_exact(PolyMatrix.from_rows([[BiPoly.one(), BiPoly.zero()]]))
    assert det_exact(PolyMatrix.identity(4)) == BiPoly.one()
    zero_row = PolyMatrix.from_rows([[BiPoly.zero(), BiPoly.zero()],
                                     [BiPoly.one(), BiPoly.one()]])
    assert det_exact(zero_row) == BiPoly.zero()
    assert _det_evaluation(zero_row) == BiPoly.zero()


def test_matmul_identity_and_associativity():
    rng = random.Random(9)
    A = PolyMatrix.from_rows([[random_poly(rng) for _ in range(3)]
                              for _ in range(2)])
    B = PolyMatrix.from_rows([[random_poly(rng) for _ in range(2)]
                              for _ in range(3)])
    C = PolyMatrix.from_rows([[random_poly(rng) for _ in range(2)]
                              for _ in range(2)])
    assert ((A @ B) @ C).entries == (A @ (B @ C)).entries
    assert (A @ PolyMatrix.identity(3)).entries == A.entries


def test_series_inverse_roundtrip():
    rng = random.Random(10)
    for _ in range(30):
        p = BiPoly.one() + BiPoly(
            {(rng.randint(0, 2), rng.randint(1, 3)): rng.randint(-4, 4)
             for _ in range(3)})
        q = series_inverse(p, 8)
        product = TruncatedSeries.from_poly(p, 8) * q
        assert product.to_poly() == BiPoly.one()
    with pytest.raises(NonUnitConstantTerm):
        series_inverse(BiPoly({(0, 0): 2}), 3)
    with pytest.raises(NonUnitConstantTerm):
        series_inverse(BiPoly({(1, 0): 1, (0, 0): 1}), 3)
