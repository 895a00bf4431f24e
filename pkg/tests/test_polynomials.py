import random
from fractions import Fraction

from parabolic_lab.linalg_exact import det_exact
from parabolic_lab.polynomials import (
    cauchy_root_bound,
    charpoly,
    count_real_roots,
    cyclotomic,
    cyclotomic_indices,
    degree,
    euler_phi,
    evaluate,
    evaluate_matrix,
    is_squarefree,
    isolate_largest_root_above,
    minimal_polynomial,
    poly,
    poly_divides,
    poly_divmod,
    poly_gcd,
    poly_mul,
    squarefree_part,
    strip_cyclotomic_factors,
)


def test_charpoly_matches_determinant():
    rng = random.Random(1)
    for _ in range(20):
        n = rng.randint(1, 5)
        m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        p = charpoly(m)
        assert p[-1] == 1 and degree(p) == n
        for x in (0, 1, -2, 3):
            shifted = [[x * (i == j) - m[i][j] for j in range(n)] for i in range(n)]
            assert evaluate(p, x) == det_exact(shifted)


def test_minimal_polynomial():
    assert minimal_polynomial([[1, 1], [0, 1]]) == poly([1, -2, 1])
    assert minimal_polynomial([[2, 0], [0, 2]]) == poly([-2, 1])
    assert minimal_polynomial([[0, 1], [1, 0]]) == poly([-1, 0, 1])
    # minimal polynomial divides characteristic polynomial, annihilates M
    rng = random.Random(2)
    for _ in range(15):
        n = rng.randint(1, 4)
        m = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        mp_ = minimal_polynomial(m)
        assert poly_divides(mp_, charpoly(m))
        assert all(x == 0 for row in evaluate_matrix(mp_, m) for x in row)


def test_cyclotomics():
    assert cyclotomic(1) == poly([-1, 1])
    assert cyclotomic(2) == poly([1, 1])
    assert cyclotomic(4) == poly([1, 0, 1])
    assert cyclotomic(12) == poly([1, 0, -1, 0, 1])
    assert euler_phi(12) == 4
    assert set(cyclotomic_indices(2)) == {1, 2, 3, 4, 6}


def test_strip_cyclotomic_factors():
    p = poly_mul(cyclotomic(4), poly_mul(cyclotomic(1), cyclotomic(1)))
    rem, found = strip_cyclotomic_factors(p)
    assert degree(rem) == 0 and found == {1: 2, 4: 1}
    rem, found = strip_cyclotomic_factors(poly([1, -6, 1]))  # Pell: x^2-6x+1
    assert degree(rem) == 2 and not found


def test_squarefree():
    p = poly_mul(poly([-1, 1]), poly([-1, 1]))
    assert not is_squarefree(p)
    assert squarefree_part(p) == poly([-1, 1])
    assert is_squarefree(poly([-1, 0, 1]))
    assert poly_gcd(poly([-1, 0, 1]), poly([-1, 1])) == poly([-1, 1])


def test_sturm_counts():
    p = poly_mul(poly([-2, 0, 1]), poly([-3, 0, 1]))  # roots +-sqrt2, +-sqrt3
    assert count_real_roots(p, Fraction(1), Fraction(2)) == 2
    assert count_real_roots(p, Fraction(3, 2), Fraction(2)) == 1
    assert count_real_roots(p, Fraction(-2), Fraction(0)) == 2
    assert count_real_roots(p, Fraction(2), Fraction(10)) == 0


def test_isolate_largest_root():
    p = poly([1, -6, 1])
    lo, hi = isolate_largest_root_above(p, Fraction(1))
    lam = 3 + 2 * 2**0.5
    assert float(lo) <= lam <= float(hi) + 1e-15
    assert isolate_largest_root_above(poly([1, 0, 1]), Fraction(1)) is None
    assert cauchy_root_bound(p) == 7


def test_divmod_roundtrip():
    rng = random.Random(3)
    for _ in range(20):
        a = poly([Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(1, 6))])
        b = poly([Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(1, 4))])
        if not b:
            continue
        q, r = poly_divmod(a, b)
        assert poly(
            [x + y for x, y in zip(list(poly_mul(q, b)) + [0] * 10, list(r) + [0] * 10)]
        ) == a or (not a and not q and not r)
