import io
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from netdensity.density import (
    Analytic,
    ExistsFlag,
    SetPredicate,
    classify_gap,
    condition_star,
    density,
    DensityStep,
    liminf_estimate,
    limsup_estimate,
    product_density_check,
    ratio,
    ratio_table,
    union_complement_ratios,
)
from netdensity.directed import (
    Divisibility,
    DivisibilityExcludingOne,
    Grid,
    Naturals,
    Product,
    ResourceLimitError,
    TruncationPolicy,
    parse_family,
)

N = Naturals()
SMALL = {"N": 40, "N^2": 9, "div": 64, "div1": 64, "prod(N,div)": 16, "prod(div1,N)": 16, "N^3": 5}


def random_set(ds, horizon, seed, p=0.5):
    rng = np.random.default_rng(seed)
    kinds = oracles.kinds_of(ds)
    members = {e for e in oracles.coords(kinds, horizon) if rng.random() < p}
    return SetPredicate(lambda e: tuple(e) in members), members


def test_ratio_examples():
    odd = SetPredicate.from_coords(lambda n: n % 2 == 1)
    D = Divisibility()
    assert ratio(odd, 2**20, D) == Fraction(1, 21)
    assert ratio(odd, 3**13, D) == 1
    assert ratio(odd, 12, D) == Fraction(2, 6)
    assert ratio(odd, 12, N) == Fraction(1, 2)
    diag = SetPredicate.from_coords(lambda a, b, c: (a == b) & (b == c))
    assert ratio(diag, (50, 50, 50), Grid(3)) == Fraction(1, 2500)


@pytest.mark.parametrize("spec", sorted(SMALL))
def test_ratio_table_matches_oracle(spec):
    ds = parse_family(spec)
    H = SMALL[spec]
    A, members = random_set(ds, H, seed=len(spec))
    table = ratio_table(A, ds, H)
    kinds = oracles.kinds_of(ds)
    for b in oracles.coords(kinds, H):
        expect = oracles.ratio(lambda a: a in members, kinds, b)
        assert table.at(b) == expect
        assert ratio(A, b, ds) == expect


@pytest.mark.parametrize("spec", sorted(SMALL))
@pytest.mark.parametrize("seed", range(3))
def test_density_estimates_match_double_loop(spec, seed):
    ds = parse_family(spec)
    H = SMALL[spec]
    A, members = random_set(ds, H, seed, p=0.3 + 0.2 * seed)
    pol = TruncationPolicy(H)
    rep = density(A, ds, pol)
    kinds = oracles.kinds_of(ds)
    r = {b: oracles.ratio(lambda a: a in members, kinds, b) for b in oracles.coords(kinds, H)}
    fb = pol.frontier_bounds(ds)
    lo = oracles.truncated_extremum(r.__getitem__, kinds, fb, H, lower=True)
    hi = oracles.truncated_extremum(r.__getitem__, kinds, fb, H, lower=False)
    if members:
        assert rep.lower_est == pytest.approx(float(lo), abs=1e-15)
        assert rep.upper_est == pytest.approx(float(hi), abs=1e-15)
    assert rep.lower_est <= rep.upper_est + 1e-15


@pytest.mark.parametrize("spec", ["N", "N^2", "div", "prod(N,div)"])
def test_net_extrema_match_double_loop(spec):
    ds = parse_family(spec)
    H = SMALL[spec]
    rng = np.random.default_rng(7)
    kinds = oracles.kinds_of(ds)
    vals = {e: float(rng.normal()) for e in oracles.coords(kinds, H)}
    pol = TruncationPolicy(H)
    fb = pol.frontier_bounds(ds)
    lo = liminf_estimate(vals.__getitem__, ds, pol)
    hi = limsup_estimate(vals.__getitem__, ds, pol)
    assert lo.value == oracles.truncated_extremum(vals.__getitem__, kinds, fb, H, True)
    assert hi.value == oracles.truncated_extremum(vals.__getitem__, kinds, fb, H, False)
    assert lo.steps[-1].value == lo.value


def test_evens_density():
    evens = SetPredicate.from_coords(lambda n: n % 2 == 0)
    rep = density(evens, N, TruncationPolicy(10_000))
    assert abs(rep.lower_est - 0.5) <= 0.01 and abs(rep.upper_est - 0.5) <= 0.01
    assert rep.exists_flag is ExistsFlag.EXISTS
    # the member-only path agrees with the vectorised one
    slow = density(SetPredicate(lambda e: e[0] % 2 == 0), N, TruncationPolicy(10_000))
    assert (slow.lower_est, slow.upper_est) == (rep.lower_est, rep.upper_est)


def test_empty_and_full_sets():
    rep = density(SetPredicate.empty(), Grid(2), TruncationPolicy(40))
    assert (rep.lower_est, rep.upper_est, rep.exists_flag) == (0.0, 0.0, ExistsFlag.EXISTS)
    assert rep.notes
    full = density(SetPredicate.everything(), Divisibility(), TruncationPolicy(400))
    assert full.lower_est == full.upper_est == 1.0


def test_divisibility_without_one_tends_to_full_density():
    A = SetPredicate.from_coords(lambda n: n != 1)
    rep = density(A, Divisibility(), TruncationPolicy(10_000))
    assert rep.lower_est >= 0.9
    lows = [s.lower for s in rep.steps]
    assert lows == sorted(lows)


def test_odd_numbers_under_divisibility():
    # the ratio 1/(v2(m)+1) makes the net limit 0; the truncated report sits near 1/(v2 of frontier + 1)
    odd = SetPredicate.from_coords(lambda n: n % 2 == 1)
    rep = density(odd, Divisibility(), TruncationPolicy(2**14))
    assert rep.upper_est <= 0.2
    assert rep.lower_est <= rep.upper_est


def test_gap_classification():
    mk = lambda lo, hi: DensityStep((1,), 10, lo, hi)  # noqa: E731
    assert classify_gap([mk(0.1, 0.12), mk(0.1, 0.11)]) is ExistsFlag.EXISTS
    assert classify_gap([mk(0.0, 0.9), mk(0.0, 0.95)]) is ExistsFlag.DOES_NOT_EXIST
    assert classify_gap([mk(0.0, 0.9), mk(0.1, 0.12)]) is ExistsFlag.INCONCLUSIVE
    assert classify_gap([mk(0.2, 0.4)]) is ExistsFlag.INCONCLUSIVE


def test_up_sets_have_density_near_one():
    rep = density(SetPredicate.up_set((2, 2), Grid(2)), Grid(2), TruncationPolicy(200))
    assert rep.lower_est >= 0.95
    assert ratio(SetPredicate.up_set((2, 2), Grid(2)), (200, 200), Grid(2)) == Fraction(199**2, 200**2)
    up = SetPredicate.up_set(6, Divisibility())
    assert [up((k,)) for k in (6, 12, 3, 8)] == [True, True, False, False]


def test_condition_star_on_div1():
    for g in (2, 3, 5):
        r = condition_star(g, DivisibilityExcludingOne(), TruncationPolicy(10_000))
        assert r.holds and r.limsup_est >= 0.5
    with pytest.raises(ValueError):
        condition_star(500, Divisibility(), TruncationPolicy(100))


def test_product_density():
    evens = SetPredicate.from_coords(lambda n: n % 2 == 0, Analytic(0.5, 0.5))
    r = product_density_check(evens, N, N, TruncationPolicy(300))
    assert r.discrepancy <= 0.02
    assert r.product is None
    r = product_density_check(evens, N, N, TruncationPolicy(300), B=evens)
    assert r.product is None and r.notes
    one = SetPredicate.from_coords(lambda n: n == 1, Analytic(0, 0))
    r = product_density_check(one, N, Divisibility(), TruncationPolicy(256), B=evens)
    assert r.product.upper_est <= 0.02


def test_set_algebra_masks_agree_with_members():
    ds = Product(Naturals(), Divisibility())
    A = SetPredicate.from_coords(lambda a, b: (a + b) % 3 == 0)
    B = SetPredicate.up_set((2, 3), ds)
    av = ds.axis_values(12)
    for P in (A.complement(), A.union(B), A.intersection(B)):
        m = P.mask(av)
        slow = SetPredicate(P.member).mask(av)
        assert (m == slow).all()


@settings(max_examples=1000, deadline=None)
@given(
    spec=st.sampled_from(["N", "N^2", "div", "div1", "prod(N,div)", "N^3"]),
    seed=st.integers(0, 10**6),
    b=st.tuples(st.integers(2, 30), st.integers(2, 30), st.integers(2, 30)),
)
def test_union_and_complement_identities(spec, seed, b):
    ds = parse_family(spec)
    rng = np.random.default_rng(seed)
    ka, kb = rng.integers(2, 7, size=2)
    A = SetPredicate(lambda e: sum(e) % ka == 0)
    B = SetPredicate(lambda e: e[0] % kb == 1)
    r = union_complement_ratios(A, B, b[: ds.arity], ds)
    assert r.union <= r.sum
    assert r.complement == 1 - r.ratio_a


def test_report_serialisation_is_stable():
    evens = SetPredicate.from_coords(lambda n: n % 2 == 0)
    rep = density(evens, N, TruncationPolicy(64))
    text = rep.to_csv()
    assert text == density(evens, N, TruncationPolicy(64)).to_csv()
    lines = text.split("\n")
    assert lines[0] == "x1,numerator,denominator,ratio"
    assert lines[1] == "1,0,1,0.0"
    assert lines[-2].startswith("summary,lower_est=")
    assert "\r" not in text
    buf = io.StringIO()
    rep.write_csv(buf)
    assert buf.getvalue() == text
    assert "exists: Exists" in rep.to_text()


def test_series_is_strided_for_large_boxes():
    rep = density(SetPredicate.everything(), N, TruncationPolicy(10_000), series_cap=100)
    assert len(rep.series_points()) == 100
    assert rep.series[0] == ((1,), Fraction(1))


def test_resource_limit():
    with pytest.raises(ResourceLimitError):
        density(SetPredicate.everything(), Grid(3), TruncationPolicy(400))
