import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from netdensity.directed import (
    NAT,
    Axis,
    AxisProduct,
    Divisibility,
    DivisibilityExcludingOne,
    FamilySpecError,
    Grid,
    InvalidElementError,
    Naturals,
    Product,
    ResourceLimitError,
    TruncationPolicy,
    default_policy,
    divisor_count,
    divisors,
    enumerate_frontier,
    parse_family,
    up_set_within,
    validate_axioms,
)

FAMILIES = {
    "N": Naturals(),
    "N^2": Grid(2),
    "N^3": Grid(3),
    "div": Divisibility(),
    "div1": DivisibilityExcludingOne(),
    "prod(N,div)": Product(Naturals(), Divisibility()),
    "prod(div1,N^2)": Product(DivisibilityExcludingOne(), Grid(2)),
}


class ReversedAxis(Axis):
    """Naturals ordered backwards: down-sets are infinite, up-sets finite."""

    name = "REV"
    offset = 1

    def leq(self, a, b):
        return a >= b

    def leq_mask(self, values, b):
        return values >= b

    def geq_mask(self, values, g):
        return values <= g

    def down_size(self, b):
        raise NotImplementedError

    def join(self, a, b):
        return min(a, b)

    def default_frontier(self, horizon):
        return max(1, horizon // 2)


def test_divisors_match_brute_force():
    for m in range(1, 400):
        assert divisors(m) == oracles.divisors(m)
        assert divisor_count(m) == len(oracles.divisors(m))
    assert divisor_count(2**20) == 21
    assert divisor_count(3**13) == 14
    with pytest.raises(ValueError):
        divisor_count(0)


def test_down_sets_of_the_basic_families():
    assert Grid(3).down_set_size((2, 3, 4)) == 24
    assert len(Grid(3).down_set((2, 3, 4))) == 24
    assert Naturals().down_set(5) == [(1,), (2,), (3,), (4,), (5,)]
    assert Divisibility().down_set(12) == [(1,), (2,), (3,), (4,), (6,), (12,)]
    assert DivisibilityExcludingOne().down_set(12) == [(2,), (3,), (4,), (6,), (12,)]
    assert DivisibilityExcludingOne().down_set_size(12) == 5
    assert Grid(2).down_set((2, 2)) == [(1, 1), (1, 2), (2, 1), (2, 2)]


@pytest.mark.parametrize("spec", sorted(FAMILIES))
def test_down_set_matches_oracle(spec):
    ds = FAMILIES[spec]
    kinds = oracles.kinds_of(ds)
    for b in oracles.coords(kinds, 6):
        assert sorted(ds.down_set(b)) == oracles.down_set(kinds, b)
        assert ds.down_set_size(b) == len(oracles.down_set(kinds, b))


def test_element_validation():
    with pytest.raises(InvalidElementError):
        Naturals().element(0)
    with pytest.raises(InvalidElementError):
        DivisibilityExcludingOne().element(1)
    with pytest.raises(InvalidElementError):
        Grid(2).element((1,))
    with pytest.raises(InvalidElementError):
        Grid(2).leq((1, 1), (0, 3))
    assert Naturals().element(np.int64(7)) == (7,)


def test_upper_bounds():
    assert Divisibility().upper_bound(4, 6) == (12,)
    assert Grid(2).upper_bound((1, 5), (3, 2)) == (3, 5)
    assert Product(Naturals(), Divisibility()).upper_bound((2, 4), (5, 6)) == (5, 12)


def test_parse_family():
    assert parse_family("N") == Naturals()
    assert parse_family("N^3") == Grid(3)
    assert parse_family("div") == Divisibility()
    assert parse_family("div1") == DivisibilityExcludingOne()
    assert parse_family("prod(N, div1)") == Product(Naturals(), DivisibilityExcludingOne())
    assert parse_family("prod(prod(N,N),div)").arity == 3
    for spec in FAMILIES:
        assert parse_family(spec).spec() == spec
    for bad in ["", "M", "N^0", "prod(N)", "prod(N,div", "divx", "N^2,"]:
        with pytest.raises(FamilySpecError):
            parse_family(bad)


def test_policy_steps_and_frontier_defaults():
    pol = TruncationPolicy(10_000)
    assert pol.steps() == [(None, 2500), (None, 5000), (None, 10_000)]
    assert pol.frontier_bounds(Naturals()) == (5000,)
    assert pol.frontier_bounds(Divisibility()) == (100,)
    assert pol.frontier_bounds(Product(Naturals(), Divisibility())) == (5000, 100)
    assert TruncationPolicy(8).steps() == [(None, 8)]
    assert TruncationPolicy(100, 40).steps() == [(10, 25), (20, 50), (40, 100)]
    assert default_policy(Naturals()).horizon == 10_000
    assert default_policy(Grid(3)).horizon == 50


def test_policy_rejects_bad_bounds():
    with pytest.raises(ValueError):
        TruncationPolicy(0)
    with pytest.raises(ValueError):
        TruncationPolicy(10, 11)
    with pytest.raises(ValueError):
        TruncationPolicy(100, refinement=((None, 200),))
    with pytest.raises(ValueError, match="frontier"):
        TruncationPolicy(100, 50).frontier_bounds(Divisibility())
    with pytest.raises(ResourceLimitError):
        TruncationPolicy(1000).check_size(Grid(3), 1000)
    with pytest.raises(ResourceLimitError):
        enumerate_frontier(Grid(3), TruncationPolicy(400), which="horizon")


def test_enumerate_frontier_and_up_sets():
    pol = TruncationPolicy(16)
    assert enumerate_frontier(Divisibility(), pol) == [(1,), (2,), (3,), (4,)]
    assert len(enumerate_frontier(Grid(2), pol)) == 64
    assert len(enumerate_frontier(Grid(2), pol, "horizon")) == 256
    assert up_set_within(3, Divisibility(), pol) == [(3,), (6,), (9,), (12,), (15,)]
    kinds = ["N", "div"]
    ds = Product(Naturals(), Divisibility())
    got = up_set_within((14, 5), ds, pol)
    assert got == [a for a in oracles.coords(kinds, 16) if oracles.leq(kinds, (14, 5), a)]
    with pytest.raises(InvalidElementError):
        up_set_within(17, Naturals(), pol)


@pytest.mark.parametrize("spec", sorted(FAMILIES))
def test_validate_axioms_accepts_families(spec):
    ds = FAMILIES[spec]
    rep = validate_axioms(ds, TruncationPolicy(36 if ds.arity < 3 else 16))
    assert rep.ok, str(rep)


def test_validate_axioms_reports_divisibility_upper_bound():
    rep = validate_axioms(Divisibility(), TruncationPolicy(50), sample_size=10_000)
    assert rep.ok
    assert rep.upper_bounds[((4,), (6,))] == (12,)


def test_validate_axioms_rejects_reversed_grid():
    rev = ReversedAxis()
    ds = AxisProduct((NAT, rev), "N x reversed N")
    rep = validate_axioms(ds, TruncationPolicy(20))
    assert not rep.ok
    assert rep.checks["reflexivity"] and rep.checks["transitivity"]
    assert not rep.checks["finite_down_sets"]
    # the natural coordinate still makes up-sets grow
    assert rep.checks["up_set_growth"]
    alone = validate_axioms(AxisProduct((rev,), "reversed N"), TruncationPolicy(20))
    assert not alone.checks["finite_down_sets"]
    assert not alone.checks["up_set_growth"]


elements = st.tuples(st.integers(2, 60), st.integers(2, 60))


@settings(max_examples=200, deadline=None)
@given(spec=st.sampled_from(["prod(N,div)", "prod(div1,N)", "N^2", "prod(div,div1)"]), a=elements, b=elements, c=elements)
def test_order_axioms_on_random_elements(spec, a, b, c):
    ds = parse_family(spec)
    assert ds.leq(a, a)
    if ds.leq(a, b) and ds.leq(b, a):
        assert a == b
    if ds.leq(a, b) and ds.leq(b, c):
        assert ds.leq(a, c)
    u = ds.upper_bound(a, b)
    assert ds.leq(a, u) and ds.leq(b, u)
    # least upper bound: anything above both is above u
    if ds.leq(a, c) and ds.leq(b, c):
        assert ds.leq(u, c)


@settings(max_examples=100, deadline=None)
@given(m=st.integers(1, 5000))
def test_divisibility_down_set_size_is_tau(m):
    assert Divisibility().down_set_size(m) == len(Divisibility().down_set(m)) == divisor_count(m)
    assert math.prod(Grid(2).element((m, 3))) == 3 * m
