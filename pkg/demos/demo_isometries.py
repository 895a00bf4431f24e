#!/usr/bin/env python3
"""The elliptic / parabolic / loxodromic trichotomy in action.

Every integral isometry of a signature-(1, n) lattice is exactly one of:
finite order (elliptic), translation-like along a geodesic with a real
eigenvalue pair lambda, 1/lambda (loxodromic), or unipotent-up-to-torsion
with a unique fixed isotropic direction (parabolic).  The classification
below runs on exact polynomial data; floats only appear in loxodromic
eigenvalue payloads.
"""

from parabolic_lab import (
    LatticeIsometry,
    classify,
    compose,
    diagonal_lattice,
    eichler_transvection,
    hyperbolic_plane,
    limit_nef_class,
    build_parabolic_seed_lattice,
)

# a Pell-type loxodromic on diag(2, -1): 3^2*2 - 4^2 = 2 etc.
pell = diagonal_lattice(2, -1)
g = LatticeIsometry(pell, ((3, 2), (4, 3)))
cls = classify(g)
print("Pell matrix [[3,2],[4,3]] on diag(2,-1):", cls.tag)
print("  dominant eigenvalue:", cls.eigenvalue, " (3 + 2 sqrt 2)")
print("  expanding direction:", cls.expanding)

# an Eichler transvection fixing the isotropic e = (1,0,0)
lat = hyperbolic_plane().direct_sum(diagonal_lattice(-2))
t = eichler_transvection(lat, (1, 0, 0), (0, 0, 1))
print("\ntransvection matrix on U + <-2>:")
for row in t.matrix:
    print("   ", row)
cls = classify(t)
print("classified:", cls.tag, "with fixed isotropic vector", cls.fixed_vector)

# iterating any positive class and renormalizing converges to that vector
direction = limit_nef_class(t, (2, 1, 0))
print("limit direction of t^i applied to (2,1,0):", direction)

# products of transvections at opposite cusps are loxodromic
t_f = eichler_transvection(lat, (0, 1, 0), (0, 0, 1))
w = compose(t, t_f)
print("\nproduct of opposite-cusp transvections:", classify(w).tag,
      "lambda =", float(classify(w).eigenvalue))

# seed lattices come with a marked cusp; the transvection realizes the
# parabolic automorphism the construction promises
marked = build_parabolic_seed_lattice(2, 5)
ts = eichler_transvection(marked.lattice, marked.y, marked.x)
print("\nseed-lattice transvection:", classify(ts).tag,
      "fixing", classify(ts).fixed_vector, "= marked y")
