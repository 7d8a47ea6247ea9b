"""
Gauge and net spaces
====================

gauge(x, r) = sup{lambda : lambda * x_a in the open r-ball for every a} = r / sup|x_a|.
"""
import numpy as np

from netdensity import Naturals, classify, constant_net, gauge, gauge_scaling_property, in_N_U, scalar_net

N = Naturals()
inv = scalar_net(lambda n: 1.0 / n, N)

print("gauge(1/n, r=1):", gauge(inv, 1.0))
print("gauge(0, r=1):", gauge(constant_net(0.0, N), 1.0))
print("2 in N_U(1):", in_N_U(constant_net(2.0, N), 1.0))
print(gauge_scaling_property(inv, 1.0, -3.0))

for name, net in [
    ("1/n", inv),
    ("1 + squares", scalar_net(lambda n: np.where(np.floor(np.sqrt(n) + 0.5) ** 2 == n, 2.0, 1.0), N)),
    ("(-1)^n", scalar_net(lambda n: (-1.0) ** n, N)),
]:
    c = classify(net)
    print(name, "M, M_cy, M_ct, M_0 =", c.csv_row(), "limit", c.limit)
