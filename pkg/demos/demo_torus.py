#!/usr/bin/env python3
"""Torus translations: orbit closures as rational hulls.

A translation of R^n/Z^n has dense orbits iff its vector satisfies no
integer relation.  The rational hull detects relations by lattice basis
reduction on [I | x/tol] and reports the orbit-closure dimension; Weyl
sums quantify equidistribution.
"""

from fractions import Fraction

from parabolic_lab import (
    TranslationVector,
    circle_gaps,
    iterate,
    orbit_closure_dim,
    parse_real,
    rational_hull,
    semicontinuity_scan,
    weyl_sum,
)
from parabolic_lab.exact import QuadExpr

golden = parse_real("(sqrt5-1)/2")
print("golden rotation: closure dimension", orbit_closure_dim((golden,)))
orbit = iterate((golden,), (0,), 10**4)
max_gap, min_gap = circle_gaps(p[0] for p in orbit)
print(f"  10^4 iterates: max gap {max_gap:.2e} (three-distance scale ~ 2.6/N)")
print(f"  Weyl sum |S_N|/N at k=1: {weyl_sum((golden,), (1,), 10**4):.2e}")

print("\nrational points have finite orbits:")
h = rational_hull((Fraction(1, 2),))
print("  x = 1/2:", h.to_json_dict())

print("\nplanted relation 2 x1 - x2 = 0:")
h = rational_hull((parse_real("sqrt2"), parse_real("2*sqrt2")))
print("  dim", h.dimension, "relations", h.relation_basis)

print("\nalgebraically independent coordinates stay dense:")
h = rational_hull((parse_real("sqrt2"), parse_real("sqrt3")))
print("  dim", h.dimension, "relations", h.relation_basis)

# dimension along a family drops only on a thin exceptional set
print("\nfamily x(t) = (t sqrt2, sqrt2) over a mixed grid:")
family = [[QuadExpr.rational(0), QuadExpr.sqrt(2)], [QuadExpr.sqrt(2)]]
grid = [QuadExpr.sqrt(3) * Fraction(k, 7) for k in range(1, 5)] + [QuadExpr.rational(1)]
report = semicontinuity_scan(family, grid)
for t, dim in report.points:
    print(f"  t = {t}: closure dimension {dim}")
print("exceptional set:", list(report.exceptional))
