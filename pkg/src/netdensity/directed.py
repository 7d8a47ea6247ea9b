"""Directed sets with finite down-sets, truncated to a finite horizon.

Every supported family is a finite product of one-dimensional *axes*:

* ``NAT``  -- positive integers with the usual order,
* ``DIV``  -- positive integers ordered by divisibility,
* ``DIV1`` -- integers >= 2 ordered by divisibility.

``Naturals`` and the two divisibility families are single axes, ``Grid(d)``
is ``d`` copies of ``NAT`` and ``Product(left, right)`` concatenates the axes
of its factors.  Because the product order is coordinatewise, down-sets,
up-sets and truncation boxes all factor over the axes, which is what makes
the array-based density code in :mod:`netdensity.density` possible.

Horizon semantics are box truncation: an element lies within horizon ``H``
when every coordinate is ``<= H``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

Element = tuple[int, ...]

DEFAULT_ELEMENT_CAP = 5_000_000


class InvalidElementError(ValueError):
    """An element does not belong to the directed set it was used with."""


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed the configured element cap."""


class FamilySpecError(ValueError):
    """A family spec string could not be parsed."""


# ---------------------------------------------------------------------------
# Axes
# ---------------------------------------------------------------------------


def divisors(m: int) -> list[int]:
    """Sorted divisors of ``m`` by trial division up to sqrt(m)."""
    if m < 1:
        raise ValueError(f"divisors of non-positive integer {m}")
    small, large = [], []
    for d in range(1, math.isqrt(m) + 1):
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
    return small + large[::-1]


def divisor_count(m: int) -> int:
    """tau(m) from the prime factorisation (trial division)."""
    if m < 1:
        raise ValueError(f"divisor count of non-positive integer {m}")
    count = 1
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        count *= e + 1
        p += 1 if p == 2 else 2
    if m > 1:
        count *= 2
    return count


class Axis:
    """One coordinate of a directed set.

    Subclasses supply the order on a single coordinate plus the vectorised
    helpers used by the density estimators.  ``offset`` is the least valid
    coordinate value; array position ``i`` along an axis holds value
    ``i + offset``.
    """

    name = "axis"
    offset = 1

    def leq(self, a: int, b: int) -> bool:
        raise NotImplementedError

    def leq_mask(self, values: np.ndarray, b: int) -> np.ndarray:
        """Boolean mask of ``values <= b`` in this axis order."""
        raise NotImplementedError

    def geq_mask(self, values: np.ndarray, g: int) -> np.ndarray:
        """Boolean mask of ``values >= g`` in this axis order."""
        raise NotImplementedError

    def down(self, b: int) -> list[int]:
        raise NotImplementedError

    def down_size(self, b: int) -> int:
        raise NotImplementedError

    def join(self, a: int, b: int) -> int | None:
        """Least upper bound, or None when the axis does not provide one."""
        return None

    def up_within(self, g: int, bound: int) -> list[int]:
        return [v for v in range(self.offset, bound + 1) if self.leq(g, v)]

    def default_frontier(self, horizon: int) -> int:
        raise NotImplementedError

    def check_frontier(self, frontier: int, horizon: int) -> None:
        if frontier < self.offset:
            raise ValueError(f"frontier {frontier} below least element {self.offset} of axis {self.name}")
        if frontier > horizon:
            raise ValueError(f"frontier {frontier} exceeds horizon {horizon}")

    def values(self, bound: int) -> np.ndarray:
        return np.arange(self.offset, bound + 1, dtype=np.int64)

    def zeta(self, arr: np.ndarray, axis: int) -> np.ndarray:
        """Sum ``arr`` over down-sets along ``axis`` (array starts at ``offset``)."""
        raise NotImplementedError

    def up_reduce(self, arr: np.ndarray, axis: int, n_front: int, op: np.ufunc) -> np.ndarray:
        """Reduce ``arr`` with ``op`` over each up-set along ``axis``.

        Only the first ``n_front`` positions (the frontier) are kept.
        """
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name


class NaturalAxis(Axis):
    name = "NAT"
    offset = 1

    def leq(self, a, b):
        return a <= b

    def leq_mask(self, values, b):
        return values <= b

    def geq_mask(self, values, g):
        return values >= g

    def down(self, b):
        return list(range(1, b + 1))

    def down_size(self, b):
        return b

    def join(self, a, b):
        return max(a, b)

    def up_within(self, g, bound):
        return list(range(g, bound + 1))

    def default_frontier(self, horizon):
        return max(1, horizon // 2)

    def zeta(self, arr, axis):
        return np.cumsum(arr, axis=axis)

    def up_reduce(self, arr, axis, n_front, op):
        rev = np.flip(arr, axis=axis)
        acc = np.flip(op.accumulate(rev, axis=axis), axis=axis)
        return np.take(acc, np.arange(n_front), axis=axis)


class DivisibilityAxis(Axis):
    """Divisibility order on the integers ``>= offset`` (offset 1 or 2)."""

    def __init__(self, offset: int):
        self.offset = offset
        self.name = "DIV" if offset == 1 else "DIV1"

    def leq(self, a, b):
        return b % a == 0

    def leq_mask(self, values, b):
        return b % values == 0

    def geq_mask(self, values, g):
        return values % g == 0

    def down(self, b):
        return [d for d in divisors(b) if d >= self.offset]

    def down_size(self, b):
        return divisor_count(b) - (self.offset - 1)

    def join(self, a, b):
        return a * b // math.gcd(a, b)

    def up_within(self, g, bound):
        return list(range(g, bound + 1, g))

    def default_frontier(self, horizon):
        # F*F <= H keeps lcm of any two frontier points inside the horizon.
        return max(self.offset, math.isqrt(horizon))

    def check_frontier(self, frontier, horizon):
        super().check_frontier(frontier, horizon)
        if frontier * frontier > horizon:
            raise ValueError(
                f"frontier {frontier} too large for divisibility horizon {horizon}: "
                f"need frontier**2 <= horizon so truncated up-sets intersect"
            )

    def zeta(self, arr, axis):
        a = np.moveaxis(arr, axis, 0)
        out = np.zeros_like(a)
        off = self.offset
        top = a.shape[0] + off - 1
        root = math.isqrt(top)
        for d in range(off, min(root, top) + 1):
            out[d - off :: d] += a[d - off]
        lo = max(root + 1, off)
        if lo <= top:
            # d > sqrt(top): group by the multiplier k instead of by d.
            for k in range(1, top // lo + 1):
                ds = np.arange(lo, top // k + 1)
                out[k * ds - off] += a[ds - off]
        return np.moveaxis(out, 0, axis)

    def up_reduce(self, arr, axis, n_front, op):
        a = np.moveaxis(arr, axis, 0)
        off = self.offset
        rows = [op.reduce(a[g - off :: g], axis=0) for g in range(off, off + n_front)]
        return np.moveaxis(np.stack(rows), 0, axis)


NAT = NaturalAxis()
DIV = DivisibilityAxis(1)
DIV1 = DivisibilityAxis(2)


# ---------------------------------------------------------------------------
# Directed sets
# ---------------------------------------------------------------------------


class DirectedSet:
    """A finite product of axes with the coordinatewise order."""

    @property
    def axes(self) -> tuple[Axis, ...]:
        raise NotImplementedError

    @property
    def arity(self) -> int:
        return len(self.axes)

    def spec(self) -> str:
        raise NotImplementedError

    def element(self, e) -> Element:
        """Normalise ``e`` (an int or a sequence of ints) and validate it."""
        if isinstance(e, (int, np.integer)):
            e = (int(e),)
        e = tuple(int(c) for c in e)
        if len(e) != self.arity:
            raise InvalidElementError(f"{self.spec()} expects {self.arity} coordinates, got {e}")
        for c, ax in zip(e, self.axes):
            if c < ax.offset:
                raise InvalidElementError(f"coordinate {c} below {ax.offset} in {e} for {self.spec()}")
        return e

    def leq(self, a, b) -> bool:
        a, b = self.element(a), self.element(b)
        return all(ax.leq(x, y) for ax, x, y in zip(self.axes, a, b))

    def down_set(self, b) -> list[Element]:
        b = self.element(b)
        return list(itertools.product(*(ax.down(c) for ax, c in zip(self.axes, b))))

    def down_set_size(self, b) -> int:
        b = self.element(b)
        return math.prod(ax.down_size(c) for ax, c in zip(self.axes, b))

    def upper_bound(self, a, b) -> Element | None:
        a, b = self.element(a), self.element(b)
        joins = [ax.join(x, y) for ax, x, y in zip(self.axes, a, b)]
        if any(j is None for j in joins):
            return None
        return tuple(joins)

    def within(self, e, bound: int) -> bool:
        return all(c <= bound for c in self.element(e))

    def axis_values(self, bounds: int | Sequence[int]) -> tuple[np.ndarray, ...]:
        """Per-axis coordinate vectors of the box with the given bounds."""
        if isinstance(bounds, (int, np.integer)):
            bounds = (int(bounds),) * self.arity
        return tuple(ax.values(b) for ax, b in zip(self.axes, bounds))

    def box_shape(self, bounds: int | Sequence[int]) -> tuple[int, ...]:
        return tuple(len(v) for v in self.axis_values(bounds))

    def __str__(self) -> str:
        return self.spec()


@dataclass(frozen=True)
class Naturals(DirectedSet):
    @property
    def axes(self):
        return (NAT,)

    def spec(self):
        return "N"


@dataclass(frozen=True)
class Grid(DirectedSet):
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("grid arity must be >= 1")

    @property
    def axes(self):
        return (NAT,) * self.d

    def spec(self):
        return f"N^{self.d}"


@dataclass(frozen=True)
class Divisibility(DirectedSet):
    @property
    def axes(self):
        return (DIV,)

    def spec(self):
        return "div"


@dataclass(frozen=True)
class DivisibilityExcludingOne(DirectedSet):
    @property
    def axes(self):
        return (DIV1,)

    def spec(self):
        return "div1"


@dataclass(frozen=True)
class Product(DirectedSet):
    left: DirectedSet
    right: DirectedSet

    @property
    def axes(self):
        return self.left.axes + self.right.axes

    def split(self, e) -> tuple[Element, Element]:
        e = self.element(e)
        k = self.left.arity
        return e[:k], e[k:]

    def spec(self):
        return f"prod({self.left.spec()},{self.right.spec()})"


@dataclass(frozen=True)
class AxisProduct(DirectedSet):
    """Directed set assembled from arbitrary axes (used for custom orders)."""

    axis_list: tuple[Axis, ...]
    label: str = "custom"

    @property
    def axes(self):
        return self.axis_list

    def spec(self):
        return self.label


_ATOMS = {"N": Naturals, "div": Divisibility, "div1": DivisibilityExcludingOne}


def parse_family(spec: str) -> DirectedSet:
    """Parse ``N``, ``N^d``, ``div``, ``div1`` or ``prod(<spec>,<spec>)``."""
    s = spec.replace(" ", "")

    def parse(i: int) -> tuple[DirectedSet, int]:
        if s.startswith("prod(", i):
            left, i = parse(i + 5)
            if i >= len(s) or s[i] != ",":
                raise FamilySpecError(f"expected ',' at position {i} in {spec!r}")
            right, i = parse(i + 1)
            if i >= len(s) or s[i] != ")":
                raise FamilySpecError(f"expected ')' at position {i} in {spec!r}")
            return Product(left, right), i + 1
        m = re.compile(r"N\^(\d+)|div1|div|N").match(s, i)
        if not m:
            raise FamilySpecError(f"unknown family at position {i} in {spec!r}")
        if m.group(1) is not None:
            d = int(m.group(1))
            if d < 1:
                raise FamilySpecError(f"grid arity must be >= 1 in {spec!r}")
            return Grid(d), m.end()
        return _ATOMS[m.group(0)](), m.end()

    ds, end = parse(0)
    if end != len(s):
        raise FamilySpecError(f"trailing characters {s[end:]!r} in {spec!r}")
    return ds


# ---------------------------------------------------------------------------
# Truncation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncationPolicy:
    """Finite stand-in for the infinite directed set.

    ``frontier=None`` means the per-axis default: ``H // 2`` on natural axes
    and ``isqrt(H)`` on divisibility axes.  ``refinement`` lists earlier
    ``(frontier, horizon)`` steps; when omitted, quarter and half horizons
    are used.  The final step is always ``(frontier, horizon)``.
    """

    horizon: int
    frontier: int | None = None
    refinement: tuple[tuple[int | None, int], ...] | None = None
    element_cap: int = DEFAULT_ELEMENT_CAP

    def __post_init__(self):
        if self.horizon < 1:
            raise ValueError("horizon must be positive")
        if self.frontier is not None and not 1 <= self.frontier <= self.horizon:
            raise ValueError(f"need 1 <= frontier <= horizon, got F={self.frontier}, H={self.horizon}")
        if self.refinement is not None:
            object.__setattr__(self, "refinement", tuple((f, int(h)) for f, h in self.refinement))
        steps = self.steps()
        for (f0, h0), (f1, h1) in zip(steps, steps[1:]):
            if h1 <= h0 or (f0 is not None and f1 is not None and f1 <= f0):
                raise ValueError(f"refinement must be strictly increasing, got {steps}")

    def steps(self) -> list[tuple[int | None, int]]:
        last = (self.frontier, self.horizon)
        if self.refinement is not None:
            return [s for s in self.refinement if s != last] + [last]
        out = []
        for div in (4, 2):
            h = self.horizon // div
            f = None if self.frontier is None else self.frontier // div
            # tiny horizons get no refinement steps
            if h >= 16 and (f is None or f >= 1) and (not out or (h > out[-1][1] and (f is None or f > out[-1][0]))):
                out.append((f, h))
        if out and self.frontier is not None and out[-1][0] >= self.frontier:
            out = [s for s in out if s[0] < self.frontier]
        return out + [last]

    def frontier_bounds(self, ds: DirectedSet, step: tuple[int | None, int] | None = None) -> tuple[int, ...]:
        f, h = step if step is not None else (self.frontier, self.horizon)
        bounds = []
        for ax in ds.axes:
            fb = ax.default_frontier(h) if f is None else f
            ax.check_frontier(fb, h)
            bounds.append(fb)
        return tuple(bounds)

    def check_size(self, ds: DirectedSet, bounds: int | Sequence[int]) -> int:
        n = math.prod(ds.box_shape(bounds))
        if n > self.element_cap:
            raise ResourceLimitError(
                f"{n} elements within bounds {bounds} of {ds.spec()} exceed the cap {self.element_cap}"
            )
        return n


def default_policy(ds: DirectedSet) -> TruncationPolicy:
    """Desk-scale policy: the horizon box holds at most about 10^6 elements."""
    horizon = {1: 10_000, 2: 1000, 3: 50}.get(ds.arity, 16)
    return TruncationPolicy(horizon)


def _iter_box(ds: DirectedSet, bounds) -> Iterator[Element]:
    return itertools.product(*(v.tolist() for v in ds.axis_values(bounds)))


def enumerate_frontier(ds: DirectedSet, policy: TruncationPolicy, which: str = "frontier") -> list[Element]:
    """Elements within the frontier box (``which="frontier"``) or the horizon box."""
    if which.lower() == "frontier":
        bounds = policy.frontier_bounds(ds)
    elif which.lower() == "horizon":
        bounds = (policy.horizon,) * ds.arity
    else:
        raise ValueError(f"which must be 'frontier' or 'horizon', got {which!r}")
    policy.check_size(ds, bounds)
    return list(_iter_box(ds, bounds))


def up_set_within(g, ds: DirectedSet, policy: TruncationPolicy) -> list[Element]:
    """Elements ``a >= g`` with every coordinate inside the horizon."""
    g = ds.element(g)
    if not ds.within(g, policy.horizon):
        raise InvalidElementError(f"{g} lies outside horizon {policy.horizon}")
    parts = [ax.up_within(c, policy.horizon) for ax, c in zip(ds.axes, g)]
    n = math.prod(len(p) for p in parts)
    if n > policy.element_cap:
        raise ResourceLimitError(f"up-set of {g} has {n} elements within the horizon, cap {policy.element_cap}")
    return list(itertools.product(*parts))


# ---------------------------------------------------------------------------
# Axiom validation
# ---------------------------------------------------------------------------


@dataclass
class AxiomReport:
    ok: bool
    checks: dict[str, bool]
    violations: list[tuple[str, tuple]] = field(default_factory=list)
    upper_bounds: dict[tuple[Element, Element], Element] = field(default_factory=dict)

    def __str__(self) -> str:
        lines = [f"ok: {self.ok}"]
        lines += [f"{k}: {'pass' if v else 'FAIL'}" for k, v in self.checks.items()]
        lines += [f"violation: {name} {w}" for name, w in self.violations[:10]]
        return "\n".join(lines)


def _count_within(ds: DirectedSet, e: Element, bound: int, up: bool) -> int:
    total = 1
    for ax, c, vals in zip(ds.axes, e, ds.axis_values(bound)):
        mask = ax.geq_mask(vals, c) if up else ax.leq_mask(vals, c)
        total *= int(np.count_nonzero(mask))
    return total


def validate_axioms(
    ds: DirectedSet,
    policy: TruncationPolicy,
    sample_size: int = 48,
    seed: int = 0,
) -> AxiomReport:
    """Finite checks of the order axioms and the down-set/up-set conditions.

    Order axioms run on a deterministic sample of the horizon box;
    directedness runs on frontier pairs and looks for an upper bound inside
    the horizon.  Down-set finiteness is checked by counting the elements
    below a point inside the horizon box and inside the doubled box (the
    counts must agree and match ``down_set_size``), and up-sets must grow
    strictly along the refinement horizons.
    """
    rng = np.random.default_rng(seed)
    horizon = policy.horizon

    def sample(bounds) -> list[Element]:
        shape = ds.box_shape(bounds)
        n = math.prod(shape)
        vals = ds.axis_values(bounds)
        idx = range(n) if n <= sample_size else sorted(rng.choice(n, size=sample_size, replace=False).tolist())
        return [tuple(int(v[i]) for v, i in zip(vals, np.unravel_index(k, shape))) for k in idx]

    pts = sample(horizon)
    front = sample(policy.frontier_bounds(ds))
    violations: list[tuple[str, tuple]] = []

    def check(name, cond, witness):
        if not cond:
            violations.append((name, witness))

    for a in pts:
        check("reflexivity", ds.leq(a, a), (a,))
    le = {(a, b): ds.leq(a, b) for a in pts for b in pts}
    for a in pts:
        for b in pts:
            if le[a, b] and le[b, a]:
                check("antisymmetry", a == b, (a, b))
            if le[a, b]:
                for c in pts:
                    if le[b, c]:
                        check("transitivity", le[a, c], (a, b, c))

    bounds_found = {}
    for i, a in enumerate(front):
        for b in front[i:]:
            c = ds.upper_bound(a, b)
            if c is None or not ds.within(c, horizon):
                c = next(
                    (e for e in _iter_box(ds, horizon) if ds.leq(a, e) and ds.leq(b, e)),
                    None,
                )
            ok = c is not None and ds.leq(a, c) and ds.leq(b, c) and ds.within(c, horizon)
            check("directedness", ok, (a, b))
            if ok:
                bounds_found[(a, b)] = c

    horizons = sorted({h for _, h in policy.steps()} | {2 * horizon})
    for b in pts:
        near, far = _count_within(ds, b, horizon, False), _count_within(ds, b, 2 * horizon, False)
        check("finite_down_sets", near == far, (b, near, far))
        try:
            exact = ds.down_set_size(b)
        except (NotImplementedError, InvalidElementError):
            exact = None
        check("finite_down_sets", exact == near, (b, exact, near))
    smallest = horizons[0]
    for g in pts:
        if not ds.within(g, smallest):
            continue
        sizes = [_count_within(ds, g, h, True) for h in horizons]
        check("up_set_growth", all(x < y for x, y in zip(sizes, sizes[1:])), (g, tuple(sizes)))

    names = ["reflexivity", "antisymmetry", "transitivity", "directedness", "finite_down_sets", "up_set_growth"]
    failed = {name for name, _ in violations}
    checks = {n: n not in failed for n in names}
    return AxiomReport(ok=not failed, checks=checks, violations=violations, upper_bounds=bounds_found)
