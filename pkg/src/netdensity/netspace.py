"""Gauge of a bounded net and membership in the net spaces M, M_cy, M_ct, M_0.

The balanced neighbourhoods used here are open norm balls ``{v : |v| < r}``.
For a net with ``s = sup |x_a|`` over the horizon, ``lambda * x_a`` lies in the
ball for every index iff ``lambda * s < r``, so the gauge is ``r / s`` (a
supremum that is not attained) and ``inf`` for the zero net.  Reading the ball
as closed gives the same value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .directed import TruncationPolicy, default_policy
from .nets import (
    EPS_LIST,
    TOL,
    Net,
    detect_limit,
    scale_nets,
    stat_cauchy,
    stat_converges_to,
)

INF = math.inf
BOUND_CAP = 1e9


@dataclass(frozen=True)
class BalancedNeighborhood:
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")


def sup_norm(net: Net, policy: TruncationPolicy | None = None) -> float:
    policy = policy or default_policy(net.ds)
    return float(np.max(net.norm(net.values(policy.horizon))))


def gauge(net: Net, U: BalancedNeighborhood | float, policy: TruncationPolicy | None = None) -> float:
    """``sup{lambda >= 0 : lambda * x_a in U for all a}`` over the horizon; ``inf`` for the zero net."""
    r = U.radius if isinstance(U, BalancedNeighborhood) else float(U)
    s = sup_norm(net, policy)
    return INF if s == 0 else r / s


def format_gauge(value: float) -> str:
    return "inf" if math.isinf(value) else repr(value)


def in_N_U(net: Net, U: BalancedNeighborhood | float, policy: TruncationPolicy | None = None) -> bool:
    return gauge(net, U, policy) < 1


@dataclass(frozen=True)
class GaugeScaling:
    lhs: float
    rhs: float
    holds: bool


def gauge_scaling_property(
    net: Net, U: BalancedNeighborhood | float, c: float, policy: TruncationPolicy | None = None, rtol: float = 1e-12
) -> GaugeScaling:
    """Compare ``gauge(c * net)`` with ``gauge(net) / |c|``."""
    if c == 0:
        raise ValueError("c must be nonzero")
    lhs = gauge(scale_nets(c, net), U, policy)
    rhs = gauge(net, U, policy) / abs(c)
    if math.isinf(lhs) or math.isinf(rhs):
        return GaugeScaling(lhs, rhs, lhs == rhs)
    return GaugeScaling(lhs, rhs, math.isclose(lhs, rhs, rel_tol=rtol, abs_tol=0.0))


@dataclass(frozen=True)
class Classification:
    in_M: bool
    in_M_cy: bool
    in_M_ct: bool
    in_M_0: bool
    limit: np.ndarray | None
    sup_norm: float
    evidence: dict = field(default_factory=dict, repr=False)

    def to_text(self) -> str:
        lim = "none" if self.limit is None else str([float(v) for v in self.limit])
        return "\n".join(
            [
                f"in_M: {self.in_M}",
                f"in_M_cy: {self.in_M_cy}",
                f"in_M_ct: {self.in_M_ct}",
                f"in_M_0: {self.in_M_0}",
                f"limit: {lim}",
                f"sup_norm: {self.sup_norm!r}",
                "limit_detection: heuristic (frontier median, confirmed by convergence test)",
            ]
        )

    def csv_row(self) -> list:
        return [int(self.in_M), int(self.in_M_cy), int(self.in_M_ct), int(self.in_M_0)]


def classify(
    net: Net,
    policy: TruncationPolicy | None = None,
    eps_list: Sequence[float] = EPS_LIST,
    tol: float = TOL,
    bound_cap: float = BOUND_CAP,
) -> Classification:
    """Flags for M, M_cy, M_ct, M_0 on the truncated net.

    Boundedness is decided against ``bound_cap``.  The raw tests can disagree
    with the inclusions M_0 ⊆ M_ct ⊆ M_cy ⊆ M at finite horizons, so each
    flag is promoted from the smaller space (a net converging to 0 converges;
    a convergent net is Cauchy) and demoted when the net is not in M.  The
    raw outcomes stay in ``evidence``.
    """
    policy = policy or default_policy(net.ds)
    s = sup_norm(net, policy)
    in_M = math.isfinite(s) and s <= bound_cap
    zero = stat_converges_to(net, np.zeros(net.dim), eps_list, policy, tol)
    detected = detect_limit(net, policy, eps_list, tol)
    cy = stat_cauchy(net, eps_list, policy, tol)
    raw = {"M_0": zero.converges, "M_ct": detected.confirmed, "M_cy": cy.cauchy}
    in_M_0 = in_M and raw["M_0"]
    in_M_ct = in_M and (raw["M_ct"] or in_M_0)
    in_M_cy = in_M and (raw["M_cy"] or in_M_ct)
    if in_M_0:
        limit = np.zeros(net.dim)
    elif in_M_ct:
        limit = detected.candidate
    else:
        limit = None
    evidence = {"raw": raw, "zero": zero, "detected": detected, "cauchy": cy}
    return Classification(in_M, in_M_cy, in_M_ct, in_M_0, limit, s, evidence)
