"""
Statistical convergence
=======================

A net converges statistically to x when {a : d(x_a, x) >= eps} has density 0
for every eps.  Changing the net on a density-0 set does not matter.
"""
import numpy as np

from netdensity import (
    Naturals,
    add_nets,
    detect_limit,
    pair_net,
    project_verdict,
    scalar_net,
    scale_nets,
    stat_converges_to,
    uniqueness_check,
)

N = Naturals()


def on_squares(n):
    r = np.floor(np.sqrt(n) + 0.5)
    return r * r == n


x = scalar_net(lambda n: np.where(on_squares(n), 7.0, 1.0 / n), N)
print(stat_converges_to(x, 0).to_text())

alt = scalar_net(lambda n: (-1.0) ** n, N)
print("(-1)^n -> 1 ?", stat_converges_to(alt, 1).converges)
print("unique limit check:", uniqueness_check(x, 0, 0).consistent)

# A pair net (x_a, y_b) on N x N converges iff both coordinates do.
inv = scalar_net(lambda n: 1.0 / n, N)
v = stat_converges_to(pair_net(inv, alt), [0, 0], [0.5, 0.1])
px, py = project_verdict(v)
print("pair:", v.converges, "components:", px.converges, py.converges)

# Sums and products of limits, detected by the frontier-median heuristic.
a = scalar_net(lambda n: 2.0 + 1.0 / n, N)
y = scalar_net(lambda n: np.where(on_squares(n), -4.0, 3.0 + (-1.0) ** n / n), N)
print("sum limit ~", detect_limit(add_nets(a, y)).candidate, "product limit ~", detect_limit(scale_nets(a, y)).candidate)
