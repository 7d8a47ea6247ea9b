"""
Statistically Cauchy nets
=========================

Cauchy-ness asks for a witness gamma whose neighbours {a >= gamma} stay within
eps of x_gamma outside a density-0 set.  Witnesses are searched on the frontier.
"""
import numpy as np

from netdensity import (
    Naturals,
    TruncationPolicy,
    cauchy_product_checks,
    convergent_implies_cauchy,
    pairwise_cauchy_density,
    scalar_net,
    stat_cauchy,
    uc_map_cauchy,
)

N = Naturals()
inv = scalar_net(lambda n: 1.0 / n, N)
alt = scalar_net(lambda n: (-1.0) ** n, N)

print(stat_cauchy(inv).to_text())
print(stat_cauchy(alt, 1.0).to_text())

r = convergent_implies_cauchy(inv, 0, 0.2)
print("convergent => cauchy:", r.passed, r.details)

# Pairs (a, b) beyond the witness that are far apart form a density-0 subset of N x N.
rep, info = pairwise_cauchy_density(inv, 30, 0.1, TruncationPolicy(500))
print("pairwise upper:", rep.upper_est, info)

print("zip with (-1)^n:", cauchy_product_checks(inv, alt, "zip", 1.0).details["combined"].cauchy)
print("sin image:", uc_map_cauchy(np.sin, lambda e: e, inv, 0.1, vectorized=True).passed)
