"""Nets in R^k: statistical convergence and statistical Cauchyness.

Uniform structures are taken to be metric: the entourage of radius ``eps``
is ``{(x, y) : d(x, y) < eps}``, so a point lies *outside* it exactly when
``d(x, y) >= eps``.  Nets are evaluated once over the horizon box and every
exceptional set becomes a boolean array fed to
:func:`netdensity.density.density_from_mask`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .density import (
    DensityReport,
    SetPredicate,
    condition_star,
    density_from_mask,
)
from .directed import DirectedSet, Element, Product, TruncationPolicy, default_policy

TOL = 0.05
EPS_LIST = (0.5, 0.1, 0.02)
MAX_WITNESSES = 32


def euclidean(v: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.square(v), axis=-1))


@dataclass(frozen=True)
class MaxNorm:
    """Product metric: max of the component norms on a split vector."""

    k: int
    left: Callable = euclidean
    right: Callable = euclidean

    def __call__(self, v):
        return np.maximum(self.left(v[..., : self.k]), self.right(v[..., self.k :]))


@dataclass(frozen=True, eq=False)
class Net:
    """A map from a directed set into R^dim.

    ``fn`` takes an element tuple and returns a scalar or a length-``dim``
    vector.  With ``vectorized=True`` it instead receives the open-grid
    coordinate arrays of a box and returns an array of shape
    ``box`` (``dim == 1``) or ``box + (dim,)``.
    """

    fn: Callable
    dim: int
    ds: DirectedSet
    norm: Callable = euclidean
    vectorized: bool = False
    parts: tuple = field(default=(), repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    def __call__(self, e) -> np.ndarray:
        e = self.ds.element(e)
        if self.vectorized:
            out = np.asarray(self.fn(*[np.asarray(c) for c in e]), dtype=float)
        else:
            out = np.asarray(self.fn(e), dtype=float)
        return out.reshape(self.dim)

    def values(self, horizon: int) -> np.ndarray:
        """Values over the horizon box, shape ``box + (dim,)``."""
        if horizon not in self._cache:
            self._cache[horizon] = _grid_values(self, horizon)
        return self._cache[horizon]

    def distance(self, x, y) -> float:
        return float(self.norm(np.asarray(x, float) - np.asarray(y, float)))


def _grid_values(net: Net, horizon: int) -> np.ndarray:
    av = net.ds.axis_values(horizon)
    shape = tuple(len(v) for v in av)
    kind = net.parts[0] if net.parts else None
    if kind == "pair":
        _, x, y = net.parts
        vx, vy = x.values(horizon), y.values(horizon)
        nx, ny = vx.ndim - 1, vy.ndim - 1
        vx = np.broadcast_to(vx.reshape(vx.shape[:-1] + (1,) * ny + (x.dim,)), shape + (x.dim,))
        vy = np.broadcast_to(vy.reshape((1,) * nx + vy.shape), shape + (y.dim,))
        return np.concatenate([vx, vy], axis=-1)
    if kind == "zip":
        _, x, y = net.parts
        return np.concatenate([x.values(horizon), y.values(horizon)], axis=-1)
    if kind == "map":
        _, f, inner, vec = net.parts
        vin = inner.values(horizon)
        if vec:
            out = np.asarray(f(vin), float)
        else:
            flat = vin.reshape(-1, inner.dim)
            out = np.array([np.asarray(f(p), float).reshape(net.dim) for p in flat])
        return out.reshape(shape + (net.dim,))
    if kind in ("add", "scale"):
        _, mode, a, y = net.parts
        va, vy = a.values(horizon), y.values(horizon)
        if mode == "product":
            na, ny = va.ndim - 1, vy.ndim - 1
            va = va.reshape(va.shape[:-1] + (1,) * ny + (va.shape[-1],))
            vy = vy.reshape((1,) * na + vy.shape)
        out = va + vy if kind == "add" else va * vy
        return np.broadcast_to(out, shape + (net.dim,))
    if net.vectorized:
        out = np.asarray(net.fn(*np.ix_(*av)), dtype=float)
        if net.dim == 1:
            out = out[..., None]
        return np.broadcast_to(out, shape + (net.dim,))
    flat = np.array(
        [np.asarray(net.fn(e), float).reshape(net.dim) for e in itertools.product(*(v.tolist() for v in av))]
    )
    return flat.reshape(shape + (net.dim,))


def constant_net(value, ds: DirectedSet) -> Net:
    value = np.atleast_1d(np.asarray(value, float))
    if len(value) == 1:
        v = float(value[0])
        return Net(lambda *c: np.full(np.broadcast(*c).shape, v), 1, ds, vectorized=True)
    return Net(lambda *c: np.broadcast_to(value, np.broadcast(*c).shape + value.shape), len(value), ds, vectorized=True)


def scalar_net(fn: Callable, ds: DirectedSet) -> Net:
    """One-dimensional net from a numpy-friendly function of the coordinates."""
    return Net(fn, 1, ds, vectorized=True)


def _point(x, dim: int) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, float))
    if x.shape != (dim,):
        raise ValueError(f"point {x.tolist()} does not have dimension {dim}")
    return x


def _policy(net: Net, policy: TruncationPolicy | None) -> TruncationPolicy:
    return policy or default_policy(net.ds)


def _up_mask(ds: DirectedSet, g: Element, horizon: int) -> np.ndarray:
    return SetPredicate.up_set(g, ds).mask(ds.axis_values(horizon))


# ---------------------------------------------------------------------------
# Statistical convergence
# ---------------------------------------------------------------------------


def exceptional_set(net: Net, x, eps: float) -> SetPredicate:
    """``{a : d(x_a, x) >= eps}``."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    x = _point(x, net.dim)

    def mask_fn(av):
        horizon = int(max(v[-1] for v in av))
        full = net.values(horizon)
        box = tuple(slice(0, len(v)) for v in av)
        return net.norm(full[box] - x) >= eps

    return SetPredicate(lambda a: net.distance(net(a), x) >= eps, None, mask_fn, f"exc(eps={eps})")


def _exceptional_mask(net: Net, x: np.ndarray, eps: float, horizon: int) -> np.ndarray:
    return net.norm(net.values(horizon) - x) >= eps


@dataclass(frozen=True)
class ConvergenceVerdict:
    limit: np.ndarray
    per_eps: tuple[tuple[float, DensityReport], ...]
    converges: bool
    tol: float
    policy: TruncationPolicy = field(repr=False)
    net: Net | None = field(default=None, repr=False, compare=False)

    def to_text(self) -> str:
        lines = [
            f"limit: {list(map(float, self.limit))}",
            f"converges: {self.converges}",
            f"tol: {self.tol}",
            f"horizon: {self.policy.horizon}",
        ]
        for eps, rep in self.per_eps:
            lines.append(f"eps={eps}: lower_est={rep.lower_est!r} upper_est={rep.upper_est!r} exists={rep.exists_flag}")
        return "\n".join(lines)


def _verdict_from_masks(net, x, eps_list, masks, policy, tol) -> ConvergenceVerdict:
    per = tuple((float(e), density_from_mask(m, net.ds, policy)) for e, m in zip(eps_list, masks))
    ok = all(rep.upper_est <= tol for _, rep in per)
    return ConvergenceVerdict(x, per, ok, tol, policy, net)


def stat_converges_to(
    net: Net,
    x,
    eps_list: Sequence[float] = EPS_LIST,
    policy: TruncationPolicy | None = None,
    tol: float = TOL,
) -> ConvergenceVerdict:
    """Density of the exceptional set at every ``eps``; converges when all upper estimates are ``<= tol``."""
    eps_list = list(eps_list)
    if not eps_list or any(e <= 0 for e in eps_list):
        raise ValueError("eps_list must be nonempty and strictly positive")
    policy = _policy(net, policy)
    policy.check_size(net.ds, policy.horizon)
    x = _point(x, net.dim)
    masks = [_exceptional_mask(net, x, e, policy.horizon) for e in eps_list]
    return _verdict_from_masks(net, x, eps_list, masks, policy, tol)


@dataclass(frozen=True)
class UniquenessReport:
    applicable: bool
    distance: float | None
    bound: float | None
    consistent: bool
    verdicts: tuple[ConvergenceVerdict, ConvergenceVerdict]


def uniqueness_check(
    net: Net,
    x,
    y,
    eps_list: Sequence[float] = EPS_LIST,
    policy: TruncationPolicy | None = None,
    tol: float = TOL,
) -> UniquenessReport:
    """When the net passes for both ``x`` and ``y``, check ``d(x, y) <= 2 * min(eps)``.

    Two exceptional sets of small density cannot cover the whole horizon, so
    some index is within ``eps`` of both points.
    """
    vx = stat_converges_to(net, x, eps_list, policy, tol)
    vy = stat_converges_to(net, y, eps_list, policy, tol)
    if not (vx.converges and vy.converges):
        return UniquenessReport(False, None, None, True, (vx, vy))
    d = net.distance(vx.limit, vy.limit)
    bound = 2 * min(eps_list)
    return UniquenessReport(True, d, bound, d <= bound, (vx, vy))


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def pair_net(x: Net, y: Net) -> Net:
    """``(a, b) -> (x_a, y_b)`` on the product directed set, max metric."""
    ds = Product(x.ds, y.ds)
    k = x.ds.arity

    def fn(e):
        return np.concatenate([x(e[:k]), y(e[k:])])

    return Net(fn, x.dim + y.dim, ds, MaxNorm(x.dim, x.norm, y.norm), parts=("pair", x, y))


def zip_net(x: Net, y: Net) -> Net:
    """``a -> (x_a, y_a)`` on a shared directed set, max metric."""
    if x.ds != y.ds:
        raise ValueError(f"zip_net needs a shared directed set, got {x.ds} and {y.ds}")

    def fn(e):
        return np.concatenate([x(e), y(e)])

    return Net(fn, x.dim + y.dim, x.ds, MaxNorm(x.dim, x.norm, y.norm), parts=("zip", x, y))


def map_net(f: Callable, net: Net, dim: int | None = None, vectorized: bool = False) -> Net:
    """``a -> f(x_a)``.  Continuity of ``f`` is the caller's responsibility.

    ``f`` maps a point of R^k (1-d array) to R^dim; with ``vectorized=True`` it
    maps an array ``(..., k)`` to ``(..., dim)``.
    """
    if dim is None:
        p = net(tuple(ax.offset for ax in net.ds.axes))
        dim = int(np.asarray(f(p[None, :]) if vectorized else f(p)).reshape(-1).size)

    def fn(e):
        p = net(e)
        return f(p[None, :])[0] if vectorized else f(p)

    return Net(fn, dim, net.ds, parts=("map", f, net, vectorized))


def _combine(kind: str, a: Net, y: Net, mode: str) -> Net:
    if mode not in ("product", "shared"):
        raise ValueError("mode must be 'product' or 'shared'")
    if kind == "add" and a.dim != y.dim:
        raise ValueError(f"cannot add nets of dimension {a.dim} and {y.dim}")
    if kind == "scale" and a.dim != 1:
        raise ValueError("the scalar net must be one-dimensional")
    op = np.add if kind == "add" else np.multiply
    if mode == "product":
        ds = Product(a.ds, y.ds)
        k = a.ds.arity
        fn = lambda e: op(a(e[:k]), y(e[k:]))  # noqa: E731
    else:
        if a.ds != y.ds:
            raise ValueError("shared mode needs a common directed set")
        ds = a.ds
        fn = lambda e: op(a(e), y(e))  # noqa: E731
    return Net(fn, y.dim, ds, parts=(kind, mode, a, y))


def add_nets(x: Net, y: Net, mode: str = "shared") -> Net:
    """``x_a + y_b`` on the product (``mode="product"``) or ``x_a + y_a`` (``"shared"``)."""
    return _combine("add", x, y, mode)


def scale_nets(a, y: Net, mode: str = "shared") -> Net:
    """``a_a * y_b`` or ``a_a * y_a``; a plain number is treated as a constant scalar net."""
    if not isinstance(a, Net):
        a = constant_net(a, y.ds)
        mode = "shared"
    return _combine("scale", a, y, mode)


# ---------------------------------------------------------------------------
# Projections of pair / zip verdicts
# ---------------------------------------------------------------------------


def project_verdict(verdict: ConvergenceVerdict) -> tuple[ConvergenceVerdict, ConvergenceVerdict]:
    """Component verdicts of a pair or zip verdict, via cylinder sets.

    For a pair net on ``D1 x D2`` the ``x`` component's exceptional set is
    read off as the cylinder ``{(a, b) : d(x_a, x) >= eps}`` on the product
    and its density is reported; for a zip net the cylinder is a set on the
    shared directed set.  The returned verdicts carry the component limits.
    """
    net = verdict.net
    if net is None or not net.parts or net.parts[0] not in ("pair", "zip"):
        raise ValueError("project_verdict needs a verdict computed on a pair_net or zip_net")
    kind, x, y = net.parts
    policy = verdict.policy
    vals = net.values(policy.horizon)
    lx, ly = verdict.limit[: x.dim], verdict.limit[x.dim :]
    eps_list = [e for e, _ in verdict.per_eps]
    out = []
    for comp, lim, sl in ((x, lx, slice(0, x.dim)), (y, ly, slice(x.dim, None))):
        cyl = [comp.norm(vals[..., sl] - lim) >= e for e in eps_list]
        per = tuple((e, density_from_mask(m, net.ds, policy)) for e, m in zip(eps_list, cyl))
        ok = all(rep.upper_est <= verdict.tol for _, rep in per)
        out.append(ConvergenceVerdict(lim, per, ok, verdict.tol, policy, comp))
    return out[0], out[1]


# ---------------------------------------------------------------------------
# Statistical Cauchyness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CauchyVerdict:
    witness: Element | None
    per_eps: tuple[tuple[float, DensityReport | None, Element | None], ...]
    cauchy: bool
    tol: float

    def to_text(self) -> str:
        lines = [f"cauchy: {self.cauchy}", f"witness: {self.witness}", f"tol: {self.tol}"]
        for eps, rep, w in self.per_eps:
            if rep is None:
                lines.append(f"eps={eps}: no witness among candidates")
            else:
                lines.append(f"eps={eps}: witness={w} upper_est={rep.upper_est!r}")
        return "\n".join(lines)


def witness_candidates(net: Net, policy: TruncationPolicy, cap: int = MAX_WITNESSES) -> list[Element]:
    """Frontier elements ranked by closeness of their value to the coordinatewise median."""
    ds = net.ds
    fb = policy.frontier_bounds(ds)
    vals = net.values(policy.horizon)
    box = tuple(slice(0, f - ax.offset + 1) for ax, f in zip(ds.axes, fb))
    front = vals[box]
    flat = front.reshape(-1, net.dim)
    med = np.median(flat, axis=0)
    order = np.argsort(net.norm(flat - med), kind="stable")[:cap]
    av = ds.axis_values(fb)
    shape = front.shape[:-1]
    return [tuple(int(v[i]) for v, i in zip(av, np.unravel_index(k, shape))) for k in order]


def cauchy_exceptional_mask(net: Net, gamma: Element, eps: float, horizon: int) -> np.ndarray:
    """``{a >= gamma : d(x_a, x_gamma) >= eps}`` over the horizon box."""
    xg = net(gamma)
    return (net.norm(net.values(horizon) - xg) >= eps) & _up_mask(net.ds, gamma, horizon)


def cauchy_density(net: Net, gamma, eps: float, policy: TruncationPolicy | None = None) -> DensityReport:
    policy = _policy(net, policy)
    gamma = net.ds.element(gamma)
    return density_from_mask(cauchy_exceptional_mask(net, gamma, eps, policy.horizon), net.ds, policy)


def stat_cauchy(
    net: Net,
    eps: float | Sequence[float] = EPS_LIST,
    policy: TruncationPolicy | None = None,
    tol: float = TOL,
    candidates: Sequence[Element] | None = None,
) -> CauchyVerdict:
    """Search frontier witnesses ``gamma`` making the Cauchy-exceptional set small.

    Cauchy when every ``eps`` has some candidate whose exceptional-set upper
    estimate is ``<= tol``; the reported witness is the one found for the
    last ``eps``.
    """
    eps_list = [float(eps)] if np.isscalar(eps) else [float(e) for e in eps]
    if any(e <= 0 for e in eps_list):
        raise ValueError("eps must be positive")
    policy = _policy(net, policy)
    policy.check_size(net.ds, policy.horizon)
    cands = list(candidates) if candidates is not None else witness_candidates(net, policy)
    per = []
    for e in eps_list:
        found = None
        for g in cands:
            rep = cauchy_density(net, g, e, policy)
            if rep.upper_est <= tol:
                found = (e, rep, g)
                break
        per.append(found or (e, None, None))
    ok = all(rep is not None for _, rep, _ in per)
    witness = per[-1][2] if ok else None
    return CauchyVerdict(witness, tuple(per), ok, tol)


@dataclass(frozen=True)
class ImplicationReport:
    """Outcome of checking that a hypothesis implies a conclusion on concrete nets."""

    applicable: bool
    passed: bool
    details: dict = field(default_factory=dict)


def convergent_implies_cauchy(
    net: Net,
    x,
    eps: float,
    policy: TruncationPolicy | None = None,
    tol: float = TOL,
) -> ImplicationReport:
    """Statistical convergence at ``eps/2`` should give a Cauchy witness at ``eps``.

    The witness is an index with ``d(x_gamma, x) < eps/2``; by the triangle
    inequality its Cauchy-exceptional set is contained in the ``eps/2``
    exceptional set of ``x``, and the containment is checked element by
    element over the horizon.
    """
    policy = _policy(net, policy)
    x = _point(x, net.dim)
    pre = stat_converges_to(net, x, [eps / 2], policy, tol)
    if not pre.converges:
        return ImplicationReport(False, True, {"reason": "not statistically convergent at eps/2", "precondition": pre})
    H = policy.horizon
    close = ~_exceptional_mask(net, x, eps / 2, H)
    fb = policy.frontier_bounds(net.ds)
    box = tuple(slice(0, f - ax.offset + 1) for ax, f in zip(net.ds.axes, fb))
    idx = np.argwhere(close[box])
    if len(idx) == 0:
        return ImplicationReport(True, False, {"reason": "no frontier index within eps/2 of the limit"})
    av = net.ds.axis_values(H)
    gamma = tuple(int(v[i]) for v, i in zip(av, idx[0]))
    cmask = cauchy_exceptional_mask(net, gamma, eps, H)
    outside = int(np.count_nonzero(cmask & close))
    rep = density_from_mask(cmask, net.ds, policy)
    passed = rep.upper_est <= tol and outside == 0
    return ImplicationReport(
        True,
        passed,
        {
            "witness": gamma,
            "cauchy_upper_est": rep.upper_est,
            "convergence_upper_est": pre.per_eps[0][1].upper_est,
            "containment_size": int(np.count_nonzero(cmask)),
            "containment_violations": outside,
        },
    )


def pairwise_cauchy_density(
    net: Net,
    gamma,
    eps: float,
    policy: TruncationPolicy | None = None,
) -> tuple[DensityReport, dict]:
    """Density on ``D x D`` of ``{(a, b) : d(x_a, x_b) >= eps, a >= gamma, b >= gamma}``.

    Also returns the single-index comparison at ``eps/2``: the pair set lies
    in the union of the two cylinders over ``E = {a >= gamma : d(x_a, x_gamma) >= eps/2}``,
    so its upper estimate is at most twice that of ``E``.
    """
    ds = net.ds
    policy = policy or default_policy(Product(ds, ds))
    gamma = ds.element(gamma)
    H = policy.horizon
    prod = Product(ds, ds)
    policy.check_size(prod, H)
    v = net.values(H)
    n = v.ndim - 1
    va = v.reshape(v.shape[:-1] + (1,) * n + (net.dim,))
    vb = v.reshape((1,) * n + v.shape)
    up = _up_mask(ds, gamma, H)
    up2 = up.reshape(up.shape + (1,) * n) & up.reshape((1,) * n + up.shape)
    pair_mask = (net.norm(va - vb) >= eps) & up2
    rep = density_from_mask(pair_mask, prod, policy)
    E = cauchy_exceptional_mask(net, gamma, eps / 2, H)
    cyl = E.reshape(E.shape + (1,) * n) | E.reshape((1,) * n + E.shape)
    single = density_from_mask(E, ds, policy)
    info = {
        "single_upper_est": single.upper_est,
        "bound": 2 * single.upper_est,
        "bound_holds": rep.upper_est <= 2 * single.upper_est + 1e-12,
        "containment_violations": int(np.count_nonzero(pair_mask & ~cyl)),
    }
    return rep, info


def cauchy_product_checks(
    x: Net,
    y: Net,
    mode: str = "pair",
    eps: float | Sequence[float] = EPS_LIST,
    policy: TruncationPolicy | None = None,
    tol: float = TOL,
) -> ImplicationReport:
    """Check the product rules for statistical Cauchyness on concrete nets.

    ``pair`` mode: both components Cauchy implies the pair net is Cauchy;
    the converse is only examined when both factors satisfy condition (*)
    at the bottom of their frontier.  ``zip`` mode: combined Cauchy iff both
    components are.
    """
    if mode == "pair":
        combined = pair_net(x, y)
    elif mode == "zip":
        combined = zip_net(x, y)
    else:
        raise ValueError("mode must be 'pair' or 'zip'")
    pc = policy or default_policy(combined.ds)
    px = policy or default_policy(x.ds)
    py = policy or default_policy(y.ds)
    if mode == "zip":
        px = py = pc
    vx = stat_cauchy(x, eps, px, tol)
    vy = stat_cauchy(y, eps, py, tol)
    vc = stat_cauchy(combined, eps, pc, tol)
    both = vx.cauchy and vy.cauchy
    details = {"x": vx, "y": vy, "combined": vc}
    forward = (not both) or vc.cauchy
    if mode == "zip":
        return ImplicationReport(True, forward and ((not vc.cauchy) or both), details)
    star = True
    for d, p in ((x.ds, px), (y.ds, py)):
        bottom = tuple(ax.offset for ax in d.axes)
        star = star and condition_star(bottom, d, p).holds
    details["condition_star"] = star
    converse = (not (star and vc.cauchy)) or both
    return ImplicationReport(True, forward and converse, details)


def uc_map_cauchy(
    f: Callable,
    modulus: Callable[[float], float],
    net: Net,
    eps: float,
    policy: TruncationPolicy | None = None,
    tol: float = TOL,
    vectorized: bool = False,
) -> ImplicationReport:
    """Uniformly continuous images of statistically Cauchy nets.

    If the net is statistically Cauchy at ``modulus(eps)`` with witness
    ``gamma``, the image net must pass at ``eps`` with the same witness.
    """
    policy = _policy(net, policy)
    delta = modulus(eps)
    base = stat_cauchy(net, delta, policy, tol)
    if not base.cauchy:
        return ImplicationReport(False, True, {"reason": "net not statistically Cauchy at modulus(eps)", "base": base})
    g = base.witness
    image = map_net(f, net, vectorized=vectorized)
    H = policy.horizon
    img_mask = cauchy_exceptional_mask(image, g, eps, H)
    src_mask = cauchy_exceptional_mask(net, g, delta, H)
    rep = density_from_mask(img_mask, net.ds, policy)
    violations = int(np.count_nonzero(img_mask & ~src_mask))
    return ImplicationReport(
        True,
        rep.upper_est <= tol and violations == 0,
        {"witness": g, "image_upper_est": rep.upper_est, "containment_violations": violations, "base": base},
    )


# ---------------------------------------------------------------------------
# Limit detection
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DetectedLimit:
    """Heuristic limit: frontier-value median, confirmed by a convergence test."""

    candidate: np.ndarray
    verdict: ConvergenceVerdict
    heuristic: bool = True

    @property
    def confirmed(self) -> bool:
        return self.verdict.converges


def detect_limit(
    net: Net,
    policy: TruncationPolicy | None = None,
    eps_list: Sequence[float] = EPS_LIST,
    tol: float = TOL,
) -> DetectedLimit:
    policy = _policy(net, policy)
    fb = policy.frontier_bounds(net.ds)
    box = tuple(slice(0, f - ax.offset + 1) for ax, f in zip(net.ds.axes, fb))
    front = net.values(policy.horizon)[box].reshape(-1, net.dim)
    cand = np.median(front, axis=0)
    return DetectedLimit(cand, stat_converges_to(net, cand, eps_list, policy, tol))
