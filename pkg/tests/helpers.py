"""Shared test apparatus: independent oracles and generators.

The classification oracle here deliberately takes a different route from
the library: spectral radius by Sturm-sequence root counting off the unit
interval, semisimplicity by evaluating the squarefree part of the
characteristic polynomial on the matrix, elliptic orders by brute-force
powering.  The library's route (cyclotomic factor stripping plus minimal
polynomial squarefreeness) never enters.
"""

from __future__ import annotations

import random
from fractions import Fraction

from parabolic_lab.lattice import QuadLattice, diagonal_lattice, hyperbolic_plane
from parabolic_lab.isometry import LatticeIsometry, eichler_transvection
from parabolic_lab.linalg_exact import (
    det_exact,
    identity_matrix,
    mat_eq,
    mat_mul,
    mat_pow,
)
from parabolic_lab.polynomials import (
    cauchy_root_bound,
    charpoly,
    count_real_roots,
    evaluate_matrix,
    poly,
    squarefree_part,
)

MAX_BRUTE_ORDER = 1000


def oracle_tag(g: LatticeIsometry) -> tuple[str, int | None]:
    """(tag, elliptic order or None) by the independent route."""
    m = [list(r) for r in g.matrix]
    n = len(m)
    det = det_exact(m)
    w = g.lattice.positive_witness
    time_preserving = g.lattice.bbf(g.apply(w), w) > 0
    if det != 1 or not time_preserving:
        return "OutsideSOPlus", None
    p = charpoly(m)
    bound = cauchy_root_bound(p)
    reflected = poly([c * (-1) ** i for i, c in enumerate(p)])
    off_circle = count_real_roots(p, Fraction(1), bound) + count_real_roots(
        reflected, Fraction(1), bound
    )
    if off_circle > 0:
        return "Loxodromic", None
    radical = squarefree_part(p)
    rad_eval = evaluate_matrix(radical, m)
    semisimple = all(x == 0 for row in rad_eval for x in row)
    if not semisimple:
        return "Parabolic", None
    acc = [row[:] for row in m]
    for k in range(1, MAX_BRUTE_ORDER + 1):
        if mat_eq(acc, identity_matrix(n)):
            return "Elliptic", k
        acc = mat_mul(acc, m)
    raise AssertionError("brute-force order search exceeded its bound")


def parabolic_payload_ok(g: LatticeIsometry, v) -> bool:
    """Property check of a claimed parabolic fixed vector (no re-extraction)."""
    from math import gcd

    gv = 0
    for x in v:
        gv = gcd(gv, abs(x))
    if gv != 1:
        return False
    lead = next((x for x in v if x), 0)
    if lead <= 0:
        return False
    return g.apply(v) == tuple(v) and g.lattice.q(v) == 0


# ---------------------------------------------------------------------------
# the five classification lattices and their SO+ generator words
# ---------------------------------------------------------------------------

def classification_lattices() -> list[tuple[QuadLattice, list[LatticeIsometry]]]:
    """Five fixed lattices of signature (1,1)-(1,3) with SO+ generators."""
    out = []

    pell1 = diagonal_lattice(2, -1)
    a1 = LatticeIsometry(pell1, ((3, 2), (4, 3)))
    out.append((pell1, [a1, _inv(a1)]))

    pell2 = diagonal_lattice(3, -1)
    a2 = LatticeIsometry(pell2, ((2, 1), (3, 2)))
    out.append((pell2, [a2, _inv(a2)]))

    u2 = hyperbolic_plane().direct_sum(diagonal_lattice(-2))
    te = eichler_transvection(u2, (1, 0, 0), (0, 0, 1))
    tf = eichler_transvection(u2, (0, 1, 0), (0, 0, 1))
    s = LatticeIsometry(u2, ((0, 1, 0), (1, 0, 0), (0, 0, -1)))
    out.append((u2, [te, _inv(te), tf, _inv(tf), s]))

    from parabolic_lab.lattice import build_parabolic_seed_lattice

    seed = build_parabolic_seed_lattice(2, 5)
    ty1 = eichler_transvection(seed.lattice, seed.y, seed.x)
    ty2 = eichler_transvection(seed.lattice, seed.y, (0, 1, 1))
    out.append((seed.lattice, [ty1, _inv(ty1), ty2, _inv(ty2)]))

    u3 = hyperbolic_plane().direct_sum(diagonal_lattice(-2, -2))
    t1 = eichler_transvection(u3, (1, 0, 0, 0), (0, 0, 1, 0))
    t2 = eichler_transvection(u3, (1, 0, 0, 0), (0, 0, 0, 1))
    t3 = eichler_transvection(u3, (0, 1, 0, 0), (0, 0, 1, 1))
    rot = LatticeIsometry(
        u3, ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0))
    )
    sw = LatticeIsometry(
        u3, ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, -1))
    )
    out.append((u3, [t1, _inv(t1), t2, t3, rot, sw]))
    return out


def _inv(g: LatticeIsometry) -> LatticeIsometry:
    from parabolic_lab.isometry import inverse

    return inverse(g)


def random_word(lattice: QuadLattice, gens, rng: random.Random, max_len: int = 6) -> LatticeIsometry:
    m = identity_matrix(lattice.rank)
    for _ in range(rng.randint(1, max_len)):
        g = gens[rng.randrange(len(gens))]
        m = mat_mul(m, [list(r) for r in g.matrix])
    return LatticeIsometry(lattice, tuple(tuple(r) for r in m))


# ---------------------------------------------------------------------------
# planted integer-relation instances
# ---------------------------------------------------------------------------

def planted_relation_instance(rng: random.Random, max_n: int = 6, max_height: int = 1000):
    """(x values as mpf tuple, precision, planted relation lattice rows).

    The relation lattice is saturated by construction (unimodular row
    operations on distinct unit rows), heights stay below max_height, and
    the returned x is already reduced to [0,1)^n with the plant sheared
    to match.
    """
    import mpmath as mp

    from parabolic_lab.linalg_exact import hnf, kernel_basis, solve_exact

    while True:
        n = rng.randint(2, max_n)
        r = rng.randint(1, n - 1)
        cols = list(range(n + 1))
        rng.shuffle(cols)
        base = [[1 if j == cols[i] else 0 for j in range(n + 1)] for i in range(r)]
        for _ in range(8):
            i, j = rng.randrange(r), rng.randrange(r)
            if i != j:
                f = rng.randint(-7, 7)
                cand = [a + f * b for a, b in zip(base[i], base[j])]
                if max(abs(c) for c in cand) <= max_height:
                    base[i] = cand
        a = [row[:n] for row in base]
        b = [-row[n] for row in base]
        part = solve_exact(a, b)
        if part is None:
            continue
        hom = kernel_basis(a)
        if len(hom) != n - r:
            continue
        with mp.workprec(160):
            x = [mp.mpf(p.numerator) / p.denominator for p in part]
            for hv in hom:
                alpha = mp.mpf(rng.random()) + mp.mpf(rng.random()) * mp.mpf(2) ** -40
                x = [v + alpha * h for v, h in zip(x, hv)]
            shifts = [int(mp.floor(v)) for v in x]
            x = [v - s for v, s in zip(x, shifts)]
        sheared = [
            row[:n] + [row[n] + sum(row[j] * shifts[j] for j in range(n))]
            for row in base
        ]
        want = hnf(sheared)
        if max(abs(c) for row in want for c in row) > max_height:
            continue
        return tuple(x), 160, want
