"""
Densities on N and N^d
======================

Ratios |A ∩ D_b| / |D_b| over a box, and the truncated liminf / limsup
that estimate the density of A.
"""
from fractions import Fraction

from netdensity import Grid, Naturals, SetPredicate, TruncationPolicy, density, ratio

evens = SetPredicate.from_coords(lambda n: n % 2 == 0)
rep = density(evens, Naturals(), TruncationPolicy(10_000))
print(rep.to_text())

# The ratio at a single point is an exact fraction.
print("ratio at 9:", ratio(evens, 9, Naturals()))

# Diagonal of N^3: the ratio at the corner (m, m, m) is 1/m^2.
diag = SetPredicate.from_coords(lambda a, b, c: (a == b) & (b == c))
for m in (10, 25, 50):
    assert ratio(diag, (m, m, m), Grid(3)) == Fraction(1, m * m)
print(density(diag, Grid(3), TruncationPolicy(50)).to_text())

# Up-sets are large: {a >= (2, 2)} in N^2.
up = SetPredicate.up_set((2, 2), Grid(2))
rep = density(up, Grid(2), TruncationPolicy(200))
print("up-set of (2,2): lower", rep.lower_est, "upper", rep.upper_est)
