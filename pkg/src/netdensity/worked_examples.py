"""Worked-example checks behind ``netdensity paper-examples``.

Each check returns a :class:`Row` with a stable name, the claim being
tested, a pass flag and a deterministic detail string (no timings), so the
CSV written by ``netdensity paper-examples --out`` is byte-identical between
runs.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .density import (
    Analytic,
    ExistsFlag,
    SetPredicate,
    condition_star,
    density,
    product_density_check,
    ratio,
)
from .directed import (
    Divisibility,
    DivisibilityExcludingOne,
    Grid,
    Naturals,
    TruncationPolicy,
)
from .nets import (
    add_nets,
    cauchy_product_checks,
    convergent_implies_cauchy,
    detect_limit,
    map_net,
    pair_net,
    pairwise_cauchy_density,
    project_verdict,
    scalar_net,
    scale_nets,
    stat_cauchy,
    stat_converges_to,
    uc_map_cauchy,
    uniqueness_check,
    zip_net,
)
from .netspace import classify, gauge, gauge_scaling_property, in_N_U

N = Naturals()


@dataclass(frozen=True)
class Row:
    name: str
    claim: str
    passed: bool
    detail: str


def _f(x: float) -> str:
    return f"{x:.6f}"


def _is_square(n):
    r = np.floor(np.sqrt(n) + 0.5)
    return r * r == n


def inv():
    return scalar_net(lambda n: 1.0 / n, N)


def square_perturbed(base: float = 0.0, bump: float = 1.0):
    """``base + 1/n`` off the squares, ``base + bump`` on them (when ``base == 0``: 1/n and 1)."""
    return scalar_net(lambda n: np.where(_is_square(n), base + bump, base + 1.0 / n), N)


def grid_diagonal_net():
    return scalar_net(lambda a, b, c: np.where((a == b) & (b == c), 1.0, 1.0 / (a + b + c)), Grid(3))


def check_grid_down_set() -> Row:
    size = Grid(3).down_set_size((2, 3, 4))
    listed = len(Grid(3).down_set((2, 3, 4)))
    return Row("grid3-down-set-size", "|D_(2,3,4)| = 2*3*4 in N^3", size == listed == 24, f"size={size}")


def check_grid_diagonal() -> Row:
    diag = SetPredicate.from_coords(lambda a, b, c: (a == b) & (b == c), Analytic(0, 0))
    rep = density(diag, Grid(3), TruncationPolicy(50))
    corner = ratio(diag, (50, 50, 50), Grid(3))
    ok = rep.upper_est <= 0.03 and rep.lower_est <= rep.upper_est and corner == Fraction(1, 2500)
    return Row(
        "grid3-diagonal-density",
        "diagonal of N^3 has density 0",
        ok,
        f"lower={_f(rep.lower_est)} upper={_f(rep.upper_est)} corner_ratio={corner}",
    )


def check_naturals() -> Row:
    evens = SetPredicate.from_coords(lambda n: n % 2 == 0, Analytic(0.5, 0.5))
    rep = density(evens, N, TruncationPolicy(10_000))
    ok = (
        len(N.down_set(5)) == 5
        and abs(rep.lower_est - 0.5) <= 0.01
        and abs(rep.upper_est - 0.5) <= 0.01
        and rep.exists_flag is ExistsFlag.EXISTS
    )
    return Row(
        "naturals-classical-density",
        "|D_n| = n in N; evens have density 1/2",
        ok,
        f"lower={_f(rep.lower_est)} upper={_f(rep.upper_est)} flag={rep.exists_flag}",
    )


def check_divisibility_odd() -> Row:
    D = Divisibility()
    odd = SetPredicate.from_coords(lambda n: n % 2 == 1)
    powers = all(ratio(odd, 2**i, D) == Fraction(1, i + 1) for i in range(1, 21))
    odd_full = all(ratio(odd, m, D) == 1 for m in range(1, 2000, 2)) and ratio(odd, 3**13, D) == 1
    # The ratio sequence along the usual order of the integers oscillates.
    H = 2**20
    rep = density(odd, D, TruncationPolicy(H))
    tail = rep.table.values[H // 2 :]
    seq_low, seq_high = float(tail.min()), float(tail.max())
    ok = powers and odd_full and seq_low <= 0.05 and seq_high == 1.0
    return Row(
        "divisibility-odd-ratios",
        "N\\2N under divisibility: ratio 1/(i+1) at 2^i, ratio 1 off 2N; ratios oscillate along m = 1, 2, 3, ...",
        ok,
        f"ratio(2^20)={ratio(odd, 2**20, D)} ratio(3^13)={ratio(odd, 3**13, D)} "
        f"tail_min={_f(seq_low)} tail_max={_f(seq_high)} "
        f"net_lower={_f(rep.lower_est)} net_upper={_f(rep.upper_est)} net_flag={rep.exists_flag}",
    )


def check_divisibility_all_but_one() -> Row:
    D = Divisibility()
    A = SetPredicate.from_coords(lambda n: n != 1)
    rep = density(A, D, TruncationPolicy(10**5))
    lows = [s.lower for s in rep.steps]
    ok = rep.lower_est >= 0.9 and all(a <= b for a, b in zip(lows, lows[1:])) and rep.exists_flag is ExistsFlag.EXISTS
    return Row(
        "divisibility-all-but-one",
        "N\\{1} under divisibility has density 1",
        ok,
        f"lower={_f(rep.lower_est)} upper={_f(rep.upper_est)} flag={rep.exists_flag}",
    )


def check_div1_star() -> Row:
    reps = [condition_star(g, DivisibilityExcludingOne(), TruncationPolicy(10**4)) for g in (2, 3, 5)]
    ok = all(r.holds and r.limsup_est >= 0.5 for r in reps)
    return Row(
        "div1-condition-star",
        "N\\{1} under divisibility: every up-set has positive upper density",
        ok,
        " ".join(f"g={r.gamma[0]}:{_f(r.limsup_est)}" for r in reps),
    )


def check_product_cylinders() -> Row:
    pol = TruncationPolicy(300)
    evens = SetPredicate.from_coords(lambda n: n % 2 == 0, Analytic(0.5, 0.5))
    one = SetPredicate.from_coords(lambda n: n == 1, Analytic(0, 0))
    r1 = product_density_check(evens, N, N, pol)
    r2 = product_density_check(one, N, N, pol, B=evens)
    ok = r1.discrepancy <= 0.02 and r2.product is not None and r2.product.upper_est <= 0.02
    return Row(
        "product-cylinder-density",
        "density(A x D2) = density(A); density(A x B) = 0 when density(A) = 0",
        ok,
        f"cylinder_gap={_f(r1.discrepancy)} AxB_upper={_f(r2.product.upper_est if r2.product else math.nan)}",
    )


def check_up_sets() -> Row:
    r2 = density(SetPredicate.up_set((2, 2), Grid(2)), Grid(2), TruncationPolicy(200))
    r1 = density(SetPredicate.up_set(5, N), N, TruncationPolicy(10_000))
    corner = ratio(SetPredicate.up_set((2, 2), Grid(2)), (200, 200), Grid(2))
    ok = r2.lower_est >= 0.95 and r1.lower_est >= 0.95 and corner == Fraction(199**2, 200**2)
    return Row(
        "grid-up-set-density",
        "up-sets in N and N^2 have density 1",
        ok,
        f"N2_lower={_f(r2.lower_est)} N_lower={_f(r1.lower_est)} corner={corner}",
    )


def check_uniqueness() -> Row:
    u1 = uniqueness_check(inv(), 0.0, 0.0)
    u2 = uniqueness_check(inv(), 0.0, 1.0)
    alt = scalar_net(lambda n: (-1.0) ** n, N)
    u3 = uniqueness_check(alt, 1.0, -1.0, [1.0])
    ok = u1.applicable and u1.distance == 0 and not u2.applicable and not u3.applicable
    return Row("statistical-limit-unique", "statistical limits are unique", ok, f"d={u1.distance} y=1:{u2.applicable} alt:{u3.applicable}")


def _agree(a, b) -> bool:
    return a.converges == b.converges and all(
        abs(ra.upper_est - rb.upper_est) <= 1e-12 for (_, ra), (_, rb) in zip(a.per_eps, b.per_eps)
    )


def check_pair_projection() -> Row:
    eps = [0.5, 0.1]
    x, y = inv(), scalar_net(lambda m: 1.0 / m, N)
    pv = stat_converges_to(pair_net(x, y), [0, 0], eps)
    px, py = project_verdict(pv)
    alt = scalar_net(lambda m: (-1.0) ** m, N)
    qv = stat_converges_to(pair_net(x, alt), [0, 0], eps)
    qx, qy = project_verdict(qv)
    pol = pv.policy
    dx = stat_converges_to(x, 0, eps, pol)
    da = stat_converges_to(alt, 0, eps, pol)
    ok = pv.converges and _agree(px, dx) and _agree(py, dx) and not qv.converges and qx.converges and not qy.converges and _agree(qy, da)
    return Row(
        "pair-net-convergence",
        "(x_a, y_b) converges statistically iff both components do",
        ok,
        f"pair={pv.converges} projections={px.converges},{py.converges} with_alternating={qx.converges},{qy.converges}",
    )


def check_zip_projection() -> Row:
    x = inv()
    y = scalar_net(lambda n: (-1.0) ** n / n, N)
    zv = stat_converges_to(zip_net(x, y), [0, 0])
    zx, zy = project_verdict(zv)
    ok = zv.converges and _agree(zx, stat_converges_to(x, 0)) and _agree(zy, stat_converges_to(y, 0))
    return Row("zip-net-convergence", "(x_a, y_a) converges statistically iff both components do", ok, f"zip={zv.converges}")


def check_continuous_image() -> Row:
    sq = map_net(lambda p: p**2, inv(), dim=1, vectorized=True)
    ab = map_net(np.abs, scalar_net(lambda n: (-1.0) ** n / n, N), dim=1, vectorized=True)
    ok = stat_converges_to(sq, 0).converges and stat_converges_to(ab, 0).converges
    return Row("continuous-image", "f(x_a) converges statistically to f(x) for f continuous at x", ok, "t^2 and |t| images")


def check_product_algebra() -> Row:
    x, y = inv(), scalar_net(lambda m: 1.0 / m, N)
    s = add_nets(x, y, "product")
    a = scalar_net(lambda n: 2.0 + 1.0 / n, N)
    p = scale_nets(a, scalar_net(lambda m: 3.0 + 1.0 / m, N), "product")
    # a_n y_m - 6 = 3/n + 2/m + 1/(nm), so the product needs wider bands at this horizon
    ok = stat_converges_to(s, 0, [0.5, 0.2]).converges and stat_converges_to(p, 6.0, [1.0, 0.5]).converges
    return Row("product-index-algebra", "x_a + y_b -> x + y and a_a y_b -> a y on D1 x D2", ok, "limits 0 and 6")


def check_shared_algebra() -> Row:
    a = scalar_net(lambda n: 2.0 + 1.0 / n, N)
    y = scalar_net(lambda n: 3.0 + 1.0 / n, N)
    s = detect_limit(add_nets(a, y))
    p = detect_limit(scale_nets(a, y))
    ok = s.confirmed and p.confirmed and abs(s.candidate[0] - 5) <= 0.02 and abs(p.candidate[0] - 6) <= 0.02
    return Row(
        "shared-index-algebra",
        "x_a + y_a -> x + y and a_a y_a -> a y",
        ok,
        f"sum_limit={_f(s.candidate[0])} product_limit={_f(p.candidate[0])}",
    )


def check_convergent_cauchy() -> Row:
    r1 = convergent_implies_cauchy(inv(), 0.0, 0.2)
    r2 = convergent_implies_cauchy(grid_diagonal_net(), 0.0, 0.2)
    r3 = convergent_implies_cauchy(square_perturbed(), 0.0, 0.2)
    ok = all(r.applicable and r.passed for r in (r1, r2, r3))
    return Row("convergent-implies-cauchy", "statistically convergent nets are statistically Cauchy", ok, f"witnesses={r1.details['witness']},{r2.details['witness']},{r3.details['witness']}")


def check_pairwise() -> Row:
    pol = TruncationPolicy(500)
    rep, info = pairwise_cauchy_density(inv(), (10,), 0.1, pol)
    alt_rep, _ = pairwise_cauchy_density(scalar_net(lambda n: (-1.0) ** n, N), (1,), 1.0, pol)
    ok = rep.upper_est <= 0.05 and info["bound_holds"] and info["containment_violations"] == 0 and abs(alt_rep.upper_est - 0.5) <= 0.02
    return Row("pairwise-cauchy-density", "Cauchy pairs beyond a witness have density 0 on D x D", ok, f"upper={_f(rep.upper_est)} alternating={_f(alt_rep.upper_est)}")


def check_cauchy_products() -> Row:
    alt = scalar_net(lambda n: (-1.0) ** n, N)
    pair = cauchy_product_checks(inv(), scalar_net(lambda m: 1.0 / m, N), "pair", [0.5, 0.1])
    z = cauchy_product_checks(inv(), alt, "zip", 1.0)
    ok = pair.passed and pair.details["combined"].cauchy and z.passed and not z.details["combined"].cauchy and z.details["x"].cauchy and not z.details["y"].cauchy
    return Row("cauchy-products", "products and zips of statistically Cauchy nets", ok, f"pair={pair.details['combined'].cauchy} zip={z.details['combined'].cauchy}")


def check_uniform_image() -> Row:
    r1 = uc_map_cauchy(lambda p: 2 * p, lambda e: e / 2, inv(), 0.1, vectorized=True)
    r2 = uc_map_cauchy(np.sin, lambda e: e, square_perturbed(), 0.1, vectorized=True)
    ok = r1.applicable and r1.passed and r2.applicable and r2.passed
    return Row("uniform-image-cauchy", "uniformly continuous images of statistically Cauchy nets", ok, f"witnesses={r1.details['witness']},{r2.details['witness']}")


def check_cauchy_sums() -> Row:
    x, y = inv(), scalar_net(lambda m: 1.0 / m, N)
    prod_sum = stat_cauchy(add_nets(x, y, "product"), [0.5, 0.2])
    shared_sum = stat_cauchy(add_nets(x, square_perturbed()))
    scaled = stat_cauchy(scale_nets(3.0, square_perturbed()))
    ok = prod_sum.cauchy and shared_sum.cauchy and scaled.cauchy
    return Row("cauchy-sums", "sums and scalar multiples of statistically Cauchy nets", ok, f"{prod_sum.cauchy},{shared_sum.cauchy},{scaled.cauchy}")


def check_gauge() -> Row:
    zero = scalar_net(lambda n: 0.0 * n, N)
    two = scalar_net(lambda n: 2.0 + 0.0 * n, N)
    g = gauge(inv(), 1.0)
    sc = gauge_scaling_property(inv(), 1.0, 2.0)
    ok = math.isinf(gauge(zero, 1.0)) and g == 1.0 and in_N_U(two, 1.0) and not in_N_U(inv(), 2.0) and sc.holds
    return Row("gauge", "gauge r/sup|x_a|, inf for the zero net", ok, f"gauge(1/n)={g} scaled={sc.lhs}")


def check_classification() -> Row:
    c1 = classify(inv())
    c2 = classify(square_perturbed(base=1.0, bump=1.0))
    c3 = classify(scalar_net(lambda n: (-1.0) ** n, N))
    ok = (
        (c1.in_M, c1.in_M_cy, c1.in_M_ct, c1.in_M_0) == (True, True, True, True)
        and (c2.in_M_ct, c2.in_M_0) == (True, False)
        and abs(c2.limit[0] - 1.0) <= 0.02
        and (c3.in_M, c3.in_M_cy) == (True, False)
    )
    return Row("net-space-classification", "M_0, M_ct, M_cy, M membership", ok, f"{c1.csv_row()} {c2.csv_row()} {c3.csv_row()}")


CHECKS: list[Callable[[], Row]] = [
    check_grid_down_set,
    check_grid_diagonal,
    check_naturals,
    check_divisibility_odd,
    check_divisibility_all_but_one,
    check_div1_star,
    check_product_cylinders,
    check_up_sets,
    check_uniqueness,
    check_pair_projection,
    check_zip_projection,
    check_continuous_image,
    check_product_algebra,
    check_shared_algebra,
    check_convergent_cauchy,
    check_pairwise,
    check_cauchy_products,
    check_uniform_image,
    check_cauchy_sums,
    check_gauge,
    check_classification,
]


def run_all() -> list[Row]:
    return [check() for check in CHECKS]


def format_table(rows: list[Row]) -> str:
    width = max(len(r.name) for r in rows)
    lines = [f"{'check':<{width}}  status  detail"]
    for r in rows:
        lines.append(f"{r.name:<{width}}  {'pass' if r.passed else 'FAIL':<6}  {r.detail}")
    return "\n".join(lines)


def to_csv(rows: list[Row]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check", "claim", "status", "detail"])
    for r in rows:
        w.writerow([r.name, r.claim, "pass" if r.passed else "fail", r.detail])
    return buf.getvalue()
