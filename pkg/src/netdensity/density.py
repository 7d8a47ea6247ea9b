"""Asymptotic density over directed sets.

The ratio ``|A ∩ D_b| / |D_b|`` is exact (``fractions.Fraction``) at single
points and exact integer arrays over a whole truncation box.  Lower and upper
densities are estimated by truncating ``sup_b inf_{a >= b}`` and
``inf_b sup_{a >= b}``: the outer optimisation runs over the frontier box,
the inner one over the part of each up-set inside the horizon box.

Because the order is a product of axes, the inner ``inf``/``sup`` over an
up-set is computed one axis at a time (suffix minima on natural axes,
minima over multiples on divisibility axes), and the down-set counts come
from the matching zeta transforms (prefix sums, divisor sums).
"""

from __future__ import annotations

import csv
import enum
import io
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .directed import (
    DirectedSet,
    Element,
    Product,
    TruncationPolicy,
    default_policy,
)

GAP_TOL = 0.05
SEPARATION = 0.5
STAR_THRESHOLD = 0.1
SERIES_CAP = 100_000

MaskFn = Callable[[tuple[np.ndarray, ...]], np.ndarray]


class ExistsFlag(str, enum.Enum):
    EXISTS = "Exists"
    DOES_NOT_EXIST = "DoesNotExist"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Analytic:
    """Known lower/upper density of a set, used as a test oracle."""

    lower: float
    upper: float

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("analytic lower density exceeds upper density")

    @property
    def exists(self) -> bool:
        return self.lower == self.upper


@dataclass(frozen=True)
class SetPredicate:
    """Membership test for a subset of a directed set.

    ``mask_fn`` is an optional vectorised form: it receives the per-axis
    coordinate vectors of a box and returns the boolean membership array of
    that box.  Without it, :meth:`mask` calls ``member`` on every element.
    """

    member: Callable[[Element], bool]
    analytic: Analytic | None = None
    mask_fn: MaskFn | None = field(default=None, compare=False)
    name: str = ""

    def __call__(self, e: Element) -> bool:
        return bool(self.member(e))

    def mask(self, axis_values: tuple[np.ndarray, ...]) -> np.ndarray:
        shape = tuple(len(v) for v in axis_values)
        if self.mask_fn is not None:
            return np.broadcast_to(np.asarray(self.mask_fn(axis_values), dtype=bool), shape)
        lists = [v.tolist() for v in axis_values]
        out = np.fromiter(
            (bool(self.member(e)) for e in _product(lists)), dtype=bool, count=math.prod(shape)
        )
        return out.reshape(shape)

    @classmethod
    def from_coords(cls, fn: Callable[..., np.ndarray], analytic: Analytic | None = None, name: str = ""):
        """Predicate from a numpy-friendly function of the coordinates.

        ``fn(*coords)`` must work both on plain ints and on open-grid arrays.
        """

        def member(e):
            return bool(fn(*e))

        def mask_fn(axis_values):
            return fn(*np.ix_(*axis_values))

        return cls(member, analytic, mask_fn, name)

    @classmethod
    def empty(cls) -> SetPredicate:
        return cls(lambda e: False, Analytic(0.0, 0.0), lambda av: np.zeros(tuple(len(v) for v in av), bool), "empty")

    @classmethod
    def everything(cls) -> SetPredicate:
        return cls(lambda e: True, Analytic(1.0, 1.0), lambda av: np.ones(tuple(len(v) for v in av), bool), "all")

    @classmethod
    def up_set(cls, g, ds: DirectedSet) -> SetPredicate:
        """``{a : a >= g}``."""
        g = ds.element(g)

        def mask_fn(axis_values):
            m = np.ones((), bool)
            for ax, c, v in zip(ds.axes, g, np.ix_(*axis_values)):
                m = m & ax.geq_mask(v, c)
            return m

        return cls(lambda e: ds.leq(g, e), None, mask_fn, f"up({g})")

    def complement(self) -> SetPredicate:
        an = None if self.analytic is None else Analytic(1 - self.analytic.upper, 1 - self.analytic.lower)
        mf = None if self.mask_fn is None else (lambda av: ~np.asarray(self.mask_fn(av), bool))
        return SetPredicate(lambda e: not self.member(e), an, mf, f"not({self.name})")

    def union(self, other: SetPredicate) -> SetPredicate:
        return SetPredicate(
            lambda e: bool(self.member(e)) or bool(other.member(e)),
            None,
            lambda av: self.mask(av) | other.mask(av),
            f"({self.name}|{other.name})",
        )

    def intersection(self, other: SetPredicate) -> SetPredicate:
        return SetPredicate(
            lambda e: bool(self.member(e)) and bool(other.member(e)),
            None,
            lambda av: self.mask(av) & other.mask(av),
            f"({self.name}&{other.name})",
        )

    def times(self, other: SetPredicate, left_arity: int) -> SetPredicate:
        """``self x other`` on a product whose left factor has ``left_arity`` axes."""
        k = left_arity

        def mask_fn(av):
            a = self.mask(av[:k])
            b = other.mask(av[k:])
            return a.reshape(a.shape + (1,) * b.ndim) & b.reshape((1,) * a.ndim + b.shape)

        return SetPredicate(
            lambda e: bool(self.member(e[:k])) and bool(other.member(e[k:])),
            None,
            mask_fn,
            f"{self.name}x{other.name}",
        )


def _product(lists):
    return itertools.product(*lists)


# ---------------------------------------------------------------------------
# Exact ratios
# ---------------------------------------------------------------------------


def ratio(A: SetPredicate, b, ds: DirectedSet) -> Fraction:
    """Exact ``|A ∩ D_b| / |D_b|``."""
    b = ds.element(b)
    hits = sum(1 for a in ds.down_set(b) if A(a))
    return Fraction(hits, ds.down_set_size(b))


def zeta_counts(mask: np.ndarray, ds: DirectedSet) -> np.ndarray:
    """Number of members in the down-set of every box element."""
    out = mask.astype(np.int64)
    for i, ax in enumerate(ds.axes):
        out = ax.zeta(out, i)
    return out


def down_sizes(ds: DirectedSet, axis_values: tuple[np.ndarray, ...]) -> np.ndarray:
    """``|D_b|`` for every box element (outer product of per-axis sizes)."""
    out = np.ones((), np.int64)
    for i, (ax, v) in enumerate(zip(ds.axes, axis_values)):
        sizes = ax.zeta(np.ones(len(v), np.int64), 0)
        shape = [1] * len(axis_values)
        shape[i] = len(v)
        out = out * sizes.reshape(shape)
    return out


@dataclass(frozen=True)
class RatioTable:
    """Exact numerators and denominators of the ratio over a horizon box."""

    ds: DirectedSet
    axis_values: tuple[np.ndarray, ...]
    numer: np.ndarray
    denom: np.ndarray

    @property
    def values(self) -> np.ndarray:
        return self.numer / self.denom

    def at(self, e) -> Fraction:
        e = self.ds.element(e)
        idx = tuple(c - ax.offset for c, ax in zip(e, self.ds.axes))
        return Fraction(int(self.numer[idx]), int(self.denom[idx]))


def ratio_table(A: SetPredicate, ds: DirectedSet, horizon: int, policy: TruncationPolicy | None = None) -> RatioTable:
    av = ds.axis_values(horizon)
    if policy is not None:
        policy.check_size(ds, horizon)
    mask = A.mask(av)
    return RatioTable(ds, av, zeta_counts(mask, ds), np.broadcast_to(down_sizes(ds, av), mask.shape))


# ---------------------------------------------------------------------------
# Truncated liminf / limsup
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    frontier: tuple[int, ...]
    horizon: int
    value: float


@dataclass(frozen=True)
class Estimate:
    """Truncated liminf or limsup, with the value at every refinement step."""

    value: float
    steps: tuple[Step, ...]

    def __float__(self):
        return float(self.value)


def _sup_inf(values: np.ndarray, ds: DirectedSet, frontier: tuple[int, ...], horizon: int, lower: bool) -> float:
    inner, outer = (np.minimum, np.max) if lower else (np.maximum, np.min)
    box = tuple(slice(0, horizon - ax.offset + 1) for ax in ds.axes)
    arr = values[box]
    for i, (ax, f) in enumerate(zip(ds.axes, frontier)):
        arr = ax.up_reduce(arr, i, f - ax.offset + 1, inner)
    return float(outer(arr))


def _estimate(values: np.ndarray, ds: DirectedSet, policy: TruncationPolicy, lower: bool) -> Estimate:
    steps = []
    for step in policy.steps():
        fb = policy.frontier_bounds(ds, step)
        steps.append(Step(fb, step[1], _sup_inf(values, ds, fb, step[1], lower)))
    return Estimate(steps[-1].value, tuple(steps))


def evaluate_on_box(f: Callable, ds: DirectedSet, horizon: int, vectorized: bool = False) -> np.ndarray:
    av = ds.axis_values(horizon)
    shape = tuple(len(v) for v in av)
    if vectorized:
        return np.broadcast_to(np.asarray(f(*np.ix_(*av)), dtype=float), shape)
    out = np.fromiter((float(f(e)) for e in _product([v.tolist() for v in av])), float, count=math.prod(shape))
    return out.reshape(shape)


def liminf_estimate(f: Callable, ds: DirectedSet, policy: TruncationPolicy | None = None, vectorized: bool = False) -> Estimate:
    """``max`` over the frontier of ``min`` over the truncated up-set of ``f``.

    ``f`` takes an element tuple, or with ``vectorized=True`` the open-grid
    coordinate arrays of the horizon box.
    """
    policy = policy or default_policy(ds)
    policy.check_size(ds, policy.horizon)
    return _estimate(evaluate_on_box(f, ds, policy.horizon, vectorized), ds, policy, lower=True)


def limsup_estimate(f: Callable, ds: DirectedSet, policy: TruncationPolicy | None = None, vectorized: bool = False) -> Estimate:
    """``min`` over the frontier of ``max`` over the truncated up-set of ``f``."""
    policy = policy or default_policy(ds)
    policy.check_size(ds, policy.horizon)
    return _estimate(evaluate_on_box(f, ds, policy.horizon, vectorized), ds, policy, lower=False)


# ---------------------------------------------------------------------------
# Density reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensityStep:
    frontier: tuple[int, ...]
    horizon: int
    lower: float
    upper: float

    @property
    def gap(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class DensityReport:
    lower_est: float
    upper_est: float
    exists_flag: ExistsFlag
    policy_used: TruncationPolicy
    steps: tuple[DensityStep, ...]
    table: RatioTable | None = field(default=None, repr=False, compare=False)
    series_cap: int = SERIES_CAP
    notes: tuple[str, ...] = ()

    @property
    def estimate(self) -> float:
        return 0.5 * (self.lower_est + self.upper_est)

    def series_points(self) -> list[tuple[Element, int, int]]:
        """``(element, numerator, denominator)`` over the horizon box, lex order.

        Boxes larger than ``series_cap`` are strided evenly.
        """
        if self.table is None:
            return []
        t = self.table
        n = t.numer.size
        stride = max(1, math.ceil(n / self.series_cap))
        shape = t.numer.shape
        flat_n, flat_d = t.numer.reshape(-1), t.denom.reshape(-1)
        out = []
        for k in range(0, n, stride):
            idx = np.unravel_index(k, shape)
            e = tuple(int(v[i]) for v, i in zip(t.axis_values, idx))
            out.append((e, int(flat_n[k]), int(flat_d[k])))
        return out

    @property
    def series(self) -> list[tuple[Element, Fraction]]:
        return [(e, Fraction(p, q)) for e, p, q in self.series_points()]

    def summary(self) -> dict:
        return {
            "lower_est": self.lower_est,
            "upper_est": self.upper_est,
            "exists": str(self.exists_flag),
            "horizon": self.policy_used.horizon,
            "frontier": self.steps[-1].frontier if self.steps else (),
        }

    def to_text(self) -> str:
        lines = [
            f"lower_est: {self.lower_est!r}",
            f"upper_est: {self.upper_est!r}",
            f"exists: {self.exists_flag}",
            f"horizon: {self.policy_used.horizon}",
        ]
        for s in self.steps:
            lines.append(f"step: frontier={_fmt_elem(s.frontier)} horizon={s.horizon} lower={s.lower!r} upper={s.upper!r}")
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)

    def write_csv(self, fh) -> None:
        arity = len(self.table.axis_values) if self.table is not None else 1
        cols = [f"x{i + 1}" for i in range(arity)] + ["numerator", "denominator", "ratio"]
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(cols)
        for e, p, q in self.series_points():
            w.writerow([*e, p, q, repr(p / q)])
        footer = ["summary", f"lower_est={self.lower_est!r}", f"upper_est={self.upper_est!r}", f"exists={self.exists_flag}"]
        w.writerow(footer + [""] * (len(cols) - len(footer)))

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def _fmt_elem(e) -> str:
    return "(" + ",".join(str(c) for c in e) + ")"


def classify_gap(steps: Sequence[DensityStep], gap_tol: float = GAP_TOL, separation: float = SEPARATION) -> ExistsFlag:
    last = list(steps[-2:])
    if all(s.gap <= gap_tol for s in last):
        return ExistsFlag.EXISTS
    if all(s.gap > separation for s in last):
        return ExistsFlag.DOES_NOT_EXIST
    return ExistsFlag.INCONCLUSIVE


def density_from_mask(
    mask: np.ndarray,
    ds: DirectedSet,
    policy: TruncationPolicy,
    gap_tol: float = GAP_TOL,
    separation: float = SEPARATION,
    series_cap: int = SERIES_CAP,
) -> DensityReport:
    """Density report for a membership array over the horizon box."""
    av = ds.axis_values(policy.horizon)
    shape = tuple(len(v) for v in av)
    mask = np.broadcast_to(np.asarray(mask, bool), shape)
    table = RatioTable(ds, av, zeta_counts(mask, ds), np.broadcast_to(down_sizes(ds, av), shape))
    if not mask.any():
        steps = tuple(DensityStep(policy.frontier_bounds(ds, s), s[1], 0.0, 0.0) for s in policy.steps())
        note = "empty within the horizon: density 0 by convention (lower and upper reported as 0)"
        return DensityReport(0.0, 0.0, ExistsFlag.EXISTS, policy, steps, table, series_cap, (note,))
    values = table.values
    steps = []
    for step in policy.steps():
        fb = policy.frontier_bounds(ds, step)
        lo = _sup_inf(values, ds, fb, step[1], lower=True)
        hi = _sup_inf(values, ds, fb, step[1], lower=False)
        steps.append(DensityStep(fb, step[1], lo, hi))
    flag = classify_gap(steps, gap_tol, separation)
    return DensityReport(steps[-1].lower, steps[-1].upper, flag, policy, tuple(steps), table, series_cap)


def density(
    A: SetPredicate,
    ds: DirectedSet,
    policy: TruncationPolicy | None = None,
    gap_tol: float = GAP_TOL,
    separation: float = SEPARATION,
    series_cap: int = SERIES_CAP,
) -> DensityReport:
    """Estimate the lower and upper asymptotic density of ``A``.

    The existence flag is ``Exists`` when the gap between the estimates is
    at most ``gap_tol`` at the last two refinement steps, ``DoesNotExist``
    when it exceeds ``separation`` at both, and ``Inconclusive`` otherwise.
    """
    policy = policy or default_policy(ds)
    policy.check_size(ds, policy.horizon)
    mask = A.mask(ds.axis_values(policy.horizon))
    return density_from_mask(mask, ds, policy, gap_tol, separation, series_cap)


# ---------------------------------------------------------------------------
# Set algebra at a point, products, condition (*)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnionComplement:
    union: Fraction
    sum: Fraction
    complement: Fraction
    ratio_a: Fraction

    @property
    def subadditive(self) -> bool:
        return self.union <= self.sum

    @property
    def complement_ok(self) -> bool:
        return self.complement == 1 - self.ratio_a


def union_complement_ratios(A: SetPredicate, B: SetPredicate, b, ds: DirectedSet) -> UnionComplement:
    """Exact ratios of ``A ∪ B``, ``A`` + ``B`` and the complement of ``A`` at ``b``."""
    down = ds.down_set(b)
    size = len(down)
    in_a = [A(a) for a in down]
    in_b = [B(a) for a in down]
    ra = Fraction(sum(in_a), size)
    rb = Fraction(sum(in_b), size)
    ru = Fraction(sum(x or y for x, y in zip(in_a, in_b)), size)
    rc = Fraction(sum(not x for x in in_a), size)
    return UnionComplement(ru, ra + rb, rc, ra)


@dataclass(frozen=True)
class ProductDensityReport:
    factor: DensityReport
    cylinder: DensityReport
    product: DensityReport | None
    discrepancy: float
    notes: tuple[str, ...] = ()


def product_density_check(
    A: SetPredicate,
    ds1: DirectedSet,
    ds2: DirectedSet,
    policy: TruncationPolicy | None = None,
    B: SetPredicate | None = None,
) -> ProductDensityReport:
    """Compare the density of ``A`` with that of ``A x D2`` (and ``A x B``).

    ``A x B`` is only examined when ``A`` carries an analytic density of 0,
    since that is the only case where its density is determined by ``A``.
    The same box horizon is used on both factors.
    """
    prod = Product(ds1, ds2)
    policy = policy or default_policy(prod)
    factor = density(A, ds1, policy)
    cyl = density(A.times(SetPredicate.everything(), ds1.arity), prod, policy)
    disc = max(abs(cyl.lower_est - factor.lower_est), abs(cyl.upper_est - factor.upper_est))
    product = None
    notes = []
    if B is not None:
        if A.analytic is not None and A.analytic.exists and A.analytic.upper == 0:
            product = density(A.times(B, ds1.arity), prod, policy)
            disc = max(disc, abs(product.upper_est - factor.upper_est))
        else:
            notes.append("A x B skipped: A has no analytic density 0")
    return ProductDensityReport(factor, cyl, product, disc, tuple(notes))


@dataclass(frozen=True)
class StarReport:
    gamma: Element
    limsup_est: float
    lower_est: float
    holds: bool
    report: DensityReport


def condition_star(
    g, ds: DirectedSet, policy: TruncationPolicy | None = None, threshold: float = STAR_THRESHOLD
) -> StarReport:
    """Upper density of the up-set of ``g``; condition (*) holds when it is positive.

    Positivity is decided against ``threshold``.
    """
    policy = policy or default_policy(ds)
    g = ds.element(g)
    if not ds.within(g, policy.horizon):
        raise ValueError(f"{g} lies outside horizon {policy.horizon}")
    rep = density(SetPredicate.up_set(g, ds), ds, policy)
    return StarReport(g, rep.upper_est, rep.lower_est, rep.upper_est > threshold, rep)
