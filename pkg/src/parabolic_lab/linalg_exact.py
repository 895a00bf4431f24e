"""Exact linear algebra over the integers and rationals.

Matrices are lists (or tuples) of rows; entries are Python ints or
Fractions.  Everything here is deterministic and exact: Gaussian
elimination with Fraction pivots, Hermite normal form with extended-gcd row
operations, and a classical LLL reduction with rational Gram-Schmidt data.
These kernels back the signature, kernel-extraction and integer-relation
machinery, so no floating point is allowed in this module.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Matrix = list[list]


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(a) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_mul(a, b) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def mat_sub(a, b) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_pow(a, k: int) -> Matrix:
    if k < 0:
        raise ValueError("use inverse_exact for negative powers")
    result = identity_matrix(len(a))
    base = [list(r) for r in a]
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def det_exact(a):
    """Determinant by fraction-free-ish Gaussian elimination (exact)."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    if all(isinstance(x, int) for row in a for x in row):
        assert det.denominator == 1
        return det.numerator
    return det


def inverse_exact(a) -> Matrix:
    """Exact inverse via Gauss-Jordan; raises on singular input."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def inverse_unimodular(a) -> Matrix:
    """Inverse of an integer matrix with determinant +-1, as integers."""
    inv = inverse_exact(a)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([x.numerator for x in row])
    return out


def rank_exact(a) -> int:
    if not a:
        return 0
    m = [[Fraction(x) for x in row] for row in a]
    rows, cols = len(m), len(m[0])
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def _vector_primitive(v: list) -> list[int]:
    """Clear denominators and divide by the content; fix the sign."""
    fracs = [Fraction(x) for x in v]
    den = 1
    for x in fracs:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fracs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return ints


def kernel_basis(a) -> list[list[int]]:
    """Basis of the rational null space, as primitive integer vectors.

    Deterministic: reduced row echelon form, one basis vector per free
    column in increasing column order, sign fixed by the first nonzero
    entry.
    """
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    m = [[Fraction(x) for x in row] for row in a]
    pivot_col: list[int] = []
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivot_col.append(col)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivot_col]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivot_col):
            v[pc] = -m[i][fc]
        basis.append(_vector_primitive(v))
    return basis


def solve_exact(a, b):
    """One rational solution of a x = b, or None if inconsistent."""
    rows, cols = len(a), len(a[0])
    m = [[Fraction(x) for x in row] + [Fraction(bv)] for row, bv in zip(a, b)]
    pivot_col = []
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivot_col.append(col)
        r += 1
    for i in range(r, rows):
        if m[i][cols]:
            return None
    x = [Fraction(0)] * cols
    for i, pc in enumerate(pivot_col):
        x[pc] = m[i][cols]
    return x


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def hnf(rows) -> list[list[int]]:
    """Row Hermite normal form of the lattice spanned by integer rows.

    Returns the nonzero rows with positive pivots and entries above each
    pivot reduced into [0, pivot).  Two row sets span the same lattice iff
    their HNFs are equal, which is how relation lattices are compared.
    """
    m = [[int(x) for x in row] for row in rows if any(row)]
    if not m:
        return []
    cols = len(m[0])
    r = 0
    for col in range(cols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, len(m)):
            while m[i][col]:
                g, s, t = _xgcd(m[r][col], m[i][col])
                a, b = m[r][col] // g, m[i][col] // g
                new_r = [s * x + t * y for x, y in zip(m[r], m[i])]
                new_i = [a * y - b * x for x, y in zip(m[r], m[i])]
                m[r], m[i] = new_r, new_i
        if m[r][col] < 0:
            m[r] = [-x for x in m[r]]
        for i in range(r):
            q = m[i][col] // m[r][col]
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return [row for row in m[:r] if any(row)]


def lll_reduce(rows, delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """LLL reduction with exact rational Gram-Schmidt data.

    Classical incremental formulation: mu and the squared Gram-Schmidt
    norms are kept as Fractions and updated through size reductions and
    swaps, so the output is deterministic.  Rows must be linearly
    independent integer vectors.
    """
    b = [[int(x) for x in row] for row in rows]
    n = len(b)
    if n <= 1:
        return b

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    # full Gram-Schmidt bootstrap: B[i] = |b*_i|^2, mu[i][j] for j < i
    mu = [[Fraction(0)] * n for _ in range(n)]
    B = [Fraction(0)] * n
    r = [[Fraction(0)] * n for _ in range(n)]  # r[i][j] = <b_i, b*_j>
    for i in range(n):
        for j in range(i):
            r[i][j] = Fraction(dot(b[i], b[j])) - sum(
                mu[j][k] * r[i][k] for k in range(j)
            )
            mu[i][j] = r[i][j] / B[j]
        B[i] = Fraction(dot(b[i], b[i])) - sum(mu[i][k] * r[i][k] for k in range(i))
        if B[i] == 0:
            raise ValueError("lll_reduce requires linearly independent rows")

    def size_reduce(k: int, l: int):
        if abs(mu[k][l]) * 2 > 1:
            q = round(mu[k][l])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            for j in range(l):
                mu[k][j] -= q * mu[l][j]
            mu[k][l] -= q

    k = 1
    while k < n:
        size_reduce(k, k - 1)
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            for l in range(k - 2, -1, -1):
                size_reduce(k, l)
            k += 1
        else:
            # swap b_k and b_{k-1}, updating mu/B in place
            m_ = mu[k][k - 1]
            B_ = B[k] + m_ * m_ * B[k - 1]
            mu[k][k - 1] = m_ * B[k - 1] / B_
            B[k] = B[k - 1] * B[k] / B_
            B[k - 1] = B_
            b[k], b[k - 1] = b[k - 1], b[k]
            for j in range(k - 1):
                mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
            for i in range(k + 1, n):
                t = mu[i][k]
                mu[i][k] = mu[i][k - 1] - m_ * t
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]
            k = max(k - 1, 1)
    return b
