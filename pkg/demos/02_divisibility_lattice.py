"""
The divisibility order
======================

On (N, |) the down-set of m is its divisors, so ratios are divisor counts.
"""
from fractions import Fraction

from netdensity import Divisibility, DivisibilityExcludingOne, SetPredicate, TruncationPolicy, condition_star, density, ratio

D = Divisibility()
odd = SetPredicate.from_coords(lambda n: n % 2 == 1)

# 2^i has i+1 divisors and only one of them (1) is odd.
for i in (1, 5, 10, 20):
    print(f"ratio at 2^{i}:", ratio(odd, 2**i, D))
print("ratio at 3^13:", ratio(odd, 3**13, D))

# Along m = 1, 2, 3, ... the ratio keeps jumping between 1 and small values.
rep = density(odd, D, TruncationPolicy(2**14))
tail = rep.table.values[2**13 :]
print("ratio range over m in (2^13, 2^14]:", tail.min(), tail.max())

# Along the divisibility order itself the ratio is 1/(v2(m)+1), which goes to 0
# once the frontier contains high powers of 2.  The truncated report:
print(rep.to_text())

# Every up-set of (N \ {1}, |) has positive upper density.
for g in (2, 3, 5):
    r = condition_star(g, DivisibilityExcludingOne(), TruncationPolicy(10_000))
    print(f"gamma={g}: limsup {r.limsup_est:.3f} holds={r.holds}")

everything_but_one = SetPredicate.from_coords(lambda n: n != 1)
print(density(everything_but_one, D, TruncationPolicy(10**5)).to_text())
assert ratio(everything_but_one, 12, D) == Fraction(5, 6)
