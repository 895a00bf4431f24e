"""Integral isometries of hyperbolic lattices and their trichotomy.

An isometry of a signature-(1, n) lattice is elliptic (finite order),
parabolic (unique fixed isotropic direction, eigenvalue 1, quasi-unipotent
but not semisimple) or loxodromic (a real eigenvalue pair lambda, 1/lambda
with |lambda| > 1).  Classification here runs entirely on exact data:

* quasi-unipotent <=> every irreducible factor of the characteristic
  polynomial is cyclotomic (checked by stripping cyclotomic divisors);
* semisimple <=> the minimal polynomial is squarefree;
* the parabolic fixed vector is the radical of the form restricted to the
  rational kernel of (g - I), scaled to a primitive integer vector;
* the loxodromic eigenvalue is isolated by Sturm bisection and polished
  with mpmath.

Floating point only ever appears in loxodromic payloads, never in the
classification logic, so spectra close to the unit circle cannot be
misclassified.

Orientation: the trichotomy is a statement about SO+(1, n).  Integral
isometries with determinant -1 or that exchange the two components of the
positive cone are reported as :class:`OutsideSOPlus` instead of being
forced into a tag.

Parabolic elements are constructed explicitly with Eichler transvections:
for an isotropic e and v orthogonal to e with q(v, v) even,

    t(x) = x + q(x, v) e - q(x, e) v - (q(v, v) / 2) q(x, e) e

is an integral isometry fixing e, and is parabolic whenever v is not
proportional to e modulo the radical of the form on e-perp.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import mpmath as mp

from .errors import ContractError, DimensionMismatchError, PreconditionError
from .lattice import QuadLattice, Vector
from .linalg_exact import (
    identity_matrix,
    inverse_unimodular,
    kernel_basis,
    mat_eq,
    mat_mul,
    mat_pow,
    mat_sub,
    mat_vec,
    transpose,
)
from .polynomials import (
    charpoly,
    is_squarefree,
    isolate_largest_root_above,
    minimal_polynomial,
    strip_cyclotomic_factors,
)

IntMatrix = tuple[tuple[int, ...], ...]

LOXODROMIC_EIGENVALUE_DPS = 50
DIRECTION_CHANGE_TOL = 1e-12
LIMIT_CONTRACT_TOL = 1e-9


@dataclass(frozen=True)
class LatticeIsometry:
    """An integer matrix preserving a lattice Gram matrix (columns = images)."""

    lattice: QuadLattice
    matrix: IntMatrix

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        n = self.lattice.rank
        if len(m) != n or any(len(row) != n for row in m):
            raise DimensionMismatchError("matrix size does not match lattice rank")
        if not verify_isometry(self.lattice, m):
            raise PreconditionError("matrix does not preserve the Gram matrix")

    def apply(self, v) -> Vector:
        v = self.lattice.check_vector(v)
        return tuple(mat_vec([list(r) for r in self.matrix], list(v)))

    @property
    def det(self) -> int:
        from .linalg_exact import det_exact

        return det_exact([list(r) for r in self.matrix])

    def to_json_dict(self) -> dict:
        return {
            "lattice": self.lattice.to_json_dict(),
            "matrix": [list(row) for row in self.matrix],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "LatticeIsometry":
        lat = QuadLattice.from_json_dict(d["lattice"])
        return cls(lat, tuple(tuple(int(x) for x in row) for row in d["matrix"]))


# -- classification payloads -------------------------------------------------

@dataclass(frozen=True)
class Elliptic:
    order: int
    tag = "Elliptic"


@dataclass(frozen=True)
class Parabolic:
    fixed_vector: Vector
    tag = "Parabolic"


@dataclass(frozen=True)
class Loxodromic:
    eigenvalue: mp.mpf
    expanding: tuple[float, ...]
    contracting: tuple[float, ...]
    tag = "Loxodromic"


@dataclass(frozen=True)
class OutsideSOPlus:
    det: int
    time_preserving: bool
    tag = "OutsideSOPlus"


IsometryClass = Elliptic | Parabolic | Loxodromic | OutsideSOPlus


# -- operations ---------------------------------------------------------------

def verify_isometry(lattice: QuadLattice, matrix) -> bool:
    """Exact check that matrix^T . gram . matrix == gram."""
    m = [list(row) for row in matrix]
    n = lattice.rank
    if len(m) != n or any(len(row) != n for row in m):
        raise DimensionMismatchError("matrix size does not match lattice rank")
    g = [list(row) for row in lattice.gram]
    return mat_eq(mat_mul(transpose(m), mat_mul(g, m)), g)


def compose(g: LatticeIsometry, h: LatticeIsometry) -> LatticeIsometry:
    """g after h (matrix product g.matrix @ h.matrix)."""
    if g.lattice != h.lattice:
        raise PreconditionError("isometries live on different lattices")
    prod = mat_mul([list(r) for r in g.matrix], [list(r) for r in h.matrix])
    return LatticeIsometry(g.lattice, tuple(tuple(r) for r in prod))


def power(g: LatticeIsometry, k: int) -> LatticeIsometry:
    if k >= 0:
        m = mat_pow([list(r) for r in g.matrix], k)
    else:
        m = mat_pow(inverse_unimodular([list(r) for r in g.matrix]), -k)
    return LatticeIsometry(g.lattice, tuple(tuple(r) for r in m))


def inverse(g: LatticeIsometry) -> LatticeIsometry:
    return power(g, -1)


def is_quasi_unipotent(g: LatticeIsometry) -> bool:
    """True iff every irreducible factor of the characteristic polynomial is cyclotomic."""
    rem, _ = strip_cyclotomic_factors(charpoly([list(r) for r in g.matrix]))
    return len(rem) == 1


def is_semisimple(g: LatticeIsometry) -> bool:
    """True iff the minimal polynomial is squarefree."""
    return is_squarefree(minimal_polynomial([list(r) for r in g.matrix]))


def is_time_preserving(g: LatticeIsometry) -> bool:
    """Does g preserve the two components of the positive cone?

    For signature (1, n), positive vectors u, v lie in the same component
    iff q(u, v) > 0; test with a fixed positive witness.
    """
    w = g.lattice.positive_witness
    return g.lattice.bbf(g.apply(w), w) > 0


def _fixed_isotropic_vector(g: LatticeIsometry) -> Vector:
    """Radical of the form restricted to ker(g - I), primitive, sign-fixed."""
    n = g.lattice.rank
    m = mat_sub([list(r) for r in g.matrix], identity_matrix(n))
    kernel = kernel_basis(m)
    if not kernel:
        raise ContractError("parabolic isometry with trivial fixed space (bug)")
    k = len(kernel)
    gram_k = [[g.lattice.bbf(kernel[i], kernel[j]) for j in range(k)] for i in range(k)]
    radical = kernel_basis(gram_k)
    if len(radical) != 1:
        raise ContractError(
            "fixed isotropic direction is not unique; classification inconsistency"
        )
    coeffs = radical[0]
    v = [sum(c * kernel[i][j] for i, c in enumerate(coeffs)) for j in range(n)]
    from .lattice import _primitive

    v = _primitive(v)
    if g.lattice.q(v) != 0 or g.apply(v) != v:
        raise ContractError("extracted fixed vector fails its invariants (bug)")
    return v


def _loxodromic_payload(g: LatticeIsometry) -> Loxodromic:
    p = charpoly([list(r) for r in g.matrix])
    interval = isolate_largest_root_above(p, Fraction(1))
    if interval is None:
        raise ContractError("loxodromic isometry with no real eigenvalue > 1 (bug)")
    lo, hi = interval
    with mp.workdps(LOXODROMIC_EIGENVALUE_DPS):
        coeffs = [mp.mpf(c.numerator) / c.denominator for c in reversed(p)]
        mid = (mp.mpf(lo.numerator) / lo.denominator + mp.mpf(hi.numerator) / hi.denominator) / 2
        lam = +mp.findroot(lambda x: mp.polyval(coeffs, x), mid)
        expanding = _eigenvector(g, lam)
        contracting = _eigenvector(g, 1 / lam)
    scale = max(abs(x) for row in g.lattice.gram for x in row)
    for v in (expanding, contracting):
        qv = _float_q(g.lattice, v)
        if abs(qv) > 1e-9 * max(1.0, scale):
            raise ContractError("loxodromic eigendirection is not isotropic (bug)")
    return Loxodromic(eigenvalue=lam, expanding=expanding, contracting=contracting)


def _float_q(lattice: QuadLattice, v) -> float:
    gv = [sum(r * x for r, x in zip(row, v)) for row in lattice.gram]
    return float(sum(a * b for a, b in zip(v, gv)))


def _eigenvector(g: LatticeIsometry, lam: mp.mpf) -> tuple[float, ...]:
    """Null direction of (M - lam I) by high-precision elimination."""
    n = g.lattice.rank
    a = [[mp.mpf(x) for x in row] for row in g.matrix]
    for i in range(n):
        a[i][i] -= lam
    cols = list(range(n))
    row = 0
    pivots = []
    for col in range(n):
        piv = max(range(row, n), key=lambda r: abs(a[r][col]), default=None)
        if piv is None or abs(a[piv][col]) < mp.mpf(10) ** (-LOXODROMIC_EIGENVALUE_DPS + 8):
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for r in range(n):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
    free = [c for c in cols if c not in pivots]
    if not free:
        raise ContractError("no null direction at the computed eigenvalue (bug)")
    fc = free[0]
    v = [mp.mpf(0)] * n
    v[fc] = mp.mpf(1)
    for r, pc in enumerate(pivots):
        v[pc] = -a[r][fc]
    sup = max(abs(x) for x in v)
    v = [x / sup for x in v]
    lead = next(x for x in v if abs(x) > 1e-30)
    if lead < 0:
        v = [-x for x in v]
    return tuple(float(x) for x in v)


def classify(g: LatticeIsometry) -> IsometryClass:
    """Trichotomy of a verified integral isometry of a signature-(1, n) lattice.

    Returns Elliptic/Parabolic/Loxodromic for elements of SO+(1, n) and
    OutsideSOPlus(det, time_preserving) otherwise.
    """
    pos, neg = g.lattice.signature
    if pos != 1 or neg < 1:
        raise PreconditionError(
            f"classification needs signature (1, n), n >= 1; got {(pos, neg)}"
        )
    det = g.det
    time_ok = is_time_preserving(g)
    if det != 1 or not time_ok:
        return OutsideSOPlus(det=det, time_preserving=time_ok)
    m = [list(r) for r in g.matrix]
    rem, factors = strip_cyclotomic_factors(charpoly(m))
    if len(rem) != 1:
        # not quasi-unipotent: some eigenvalue is off the unit circle
        return _loxodromic_payload(g)
    minpoly = minimal_polynomial(m)
    if is_squarefree(minpoly):
        order = lcm(*factors.keys()) if factors else 1
        if not mat_eq(mat_pow(m, order), identity_matrix(len(m))):
            raise ContractError("elliptic order computation failed (bug)")
        return Elliptic(order=order)
    return Parabolic(fixed_vector=_fixed_isotropic_vector(g))


def eichler_transvection(lattice: QuadLattice, e, v) -> LatticeIsometry:
    """The integral transvection fixing the isotropic vector e (see module docs).

    Preconditions: q(e, e) = 0, q(e, v) = 0, and q(v, v) even so that the
    matrix is integral.
    """
    e = lattice.check_vector(e)
    v = lattice.check_vector(v)
    if lattice.q(e) != 0:
        raise PreconditionError("e must be isotropic")
    if lattice.bbf(e, v) != 0:
        raise PreconditionError("v must be orthogonal to e")
    qv = lattice.q(v)
    if qv % 2:
        raise PreconditionError("q(v, v) must be even for an integral transvection")
    n = lattice.rank
    ge = [sum(r * x for r, x in zip(row, e)) for row in lattice.gram]
    gv = [sum(r * x for r, x in zip(row, v)) for row in lattice.gram]
    half = qv // 2
    mat = [
        [
            (1 if i == j else 0) + gv[j] * e[i] - ge[j] * v[i] - half * ge[j] * e[i]
            for j in range(n)
        ]
        for i in range(n)
    ]
    t = LatticeIsometry(lattice, tuple(tuple(r) for r in mat))
    if t.apply(e) != e:
        raise ContractError("transvection does not fix e (bug)")
    return t


def _canonical_direction(v, normalization: str = "sup") -> list[float]:
    if normalization == "l2":
        nrm = sum(x * x for x in v) ** 0.5
    else:
        nrm = max(abs(x) for x in v)
    out = [x / nrm for x in v]
    lead = next(x for x in out if x)
    if lead < 0:
        out = [-x for x in out]
    return out


def limit_nef_class(
    g: LatticeIsometry,
    w,
    iters: int = 2**40,
    normalization: str = "sup",
) -> tuple[float, ...]:
    """Limit direction of g^i(w) for parabolic g and w in the positive cone.

    Iterates by exact exponent doubling (integer matrix squaring), so power
    exponents far beyond any float-safe range are exact; the direction is
    normalized (sup norm by default) and iteration stops once the change
    between consecutive doublings drops below 1e-12.  The parabolic drift
    is polynomial, so the normalized direction converges like 1/exponent;
    doubling reaches the 1e-9 contract quickly where linear iteration
    could not.  `iters` caps the exponent.

    The result is checked against the parabolic fixed vector
    (proportional within 1e-9) before being returned.
    """
    if normalization not in ("sup", "l2"):
        raise PreconditionError("normalization must be 'sup' or 'l2'")
    cls = classify(g)
    if not isinstance(cls, Parabolic):
        raise PreconditionError(f"limit direction needs a parabolic isometry, got {cls.tag}")
    w = [Fraction(x) for x in w]
    if len(w) != g.lattice.rank:
        raise DimensionMismatchError("w has wrong length")
    gw = [sum(Fraction(r) * x for r, x in zip(row, w)) for row in g.lattice.gram]
    qww = sum(a * b for a, b in zip(w, gw))
    if qww <= 0:
        raise PreconditionError("w must lie in the open positive cone (q(w, w) > 0)")
    lead = next((x for x in w if x), 0)
    if lead <= 0:
        raise PreconditionError("w must have positive first nonzero coordinate")

    def direction(vec) -> list[float]:
        return _canonical_direction([float(x) for x in vec], normalization)

    m = [list(r) for r in g.matrix]
    exponent = 1
    prev = direction([sum(Fraction(a) * x for a, x in zip(row, w)) for row in m])
    while exponent < iters:
        m = mat_mul(m, m)
        exponent *= 2
        cur = direction([sum(Fraction(a) * x for a, x in zip(row, w)) for row in m])
        if max(abs(a - b) for a, b in zip(cur, prev)) < DIRECTION_CHANGE_TOL:
            prev = cur
            break
        prev = cur
    else:
        raise ContractError(
            f"direction did not converge within exponent cap {iters}"
        )
    target = _canonical_direction([float(x) for x in cls.fixed_vector], normalization)
    if max(abs(a - b) for a, b in zip(prev, target)) > LIMIT_CONTRACT_TOL:
        raise ContractError("limit direction does not match the parabolic fixed vector")
    return tuple(prev)
