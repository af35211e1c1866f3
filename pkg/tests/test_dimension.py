import itertools
import math
from fractions import Fraction

import pytest

from takagi_lab.arith import BinaryExpansion, parse_expansion, word_deficiencies
from takagi_lab.dimension import (
    alphabet_X,
    alphabet_count,
    bilipschitz_check,
    binomial_count,
    box_counts,
    box_dimension_gamma,
    enumerate_gamma_points,
    in_gamma,
    least_r0,
    level_image_point,
    local_branch_count,
    local_dim_lower,
    log2_interval,
    spectrum_table,
    transfer_gap,
)
from takagi_lab.evaluation import tau
from takagi_lab.omega import catalan_closed, omega_membership

A = parse_expansion("0.(000111)")
B = parse_expansion("0.(001011)")


def brute_alphabet(r: int) -> list[str]:
    out = []
    for w in itertools.product("01", repeat=2 * r):
        ds = word_deficiencies("".join(w))
        if ds[-1] == 0 and all(d > 0 for d in ds[:-1]):
            out.append("".join(w))
    return out


def test_alphabet_examples():
    assert alphabet_X(1).words == ("01",)
    assert alphabet_X(3).words == ("000111", "001011")
    assert alphabet_X(4).count == 5


@pytest.mark.parametrize("r", range(1, 8))
def test_alphabet_brute_force(r):
    assert list(alphabet_X(r).words) == brute_alphabet(r)
    assert alphabet_count(r) == len(brute_alphabet(r)) == catalan_closed(r - 1) == binomial_count(r)


def test_alphabet_shape():
    for r in range(2, 7):
        assert all(w.startswith("00") and w.endswith("11") for w in alphabet_X(r).words)


def test_gamma_points():
    assert enumerate_gamma_points(3, 1) == [A, B]
    assert len(enumerate_gamma_points(3, 2)) == 4
    assert {p.value for p in enumerate_gamma_points(1, 3)} == {Fraction(1, 3)}


def test_gamma_membership():
    assert in_gamma(3, A) and in_gamma(3, B)
    assert not in_gamma(3, parse_expansion("0.(01)"))
    assert not in_gamma(2, A)
    for p in enumerate_gamma_points(4, 2):
        assert in_gamma(4, p) and omega_membership(p).member


def test_box_counts_r3():
    est = box_dimension_gamma(3, 5)
    assert est.scales == tuple((6 * k, 2**k) for k in range(1, 6))
    assert est.slope == Fraction(1, 6)


@pytest.mark.parametrize("r, k", [(2, 5), (4, 3), (1, 4)])
def test_box_counts_powers(r, k):
    est = box_dimension_gamma(r, k)
    c = alphabet_X(r).count
    assert [n for _, n in est.scales] == [c**j for j in range(1, k + 1)]


def test_box_slope_r4():
    est = box_dimension_gamma(4, 3)
    lo, hi = est.slope_interval
    assert est.slope is None
    assert abs(float(lo) - math.log2(5) / 8) < 1e-15
    assert hi - lo < Fraction(1, 10**20)


def test_box_slope_r1():
    assert box_dimension_gamma(1, 3).slope == 0


def test_box_counts_oracle():
    vals = [Fraction(1, 10), Fraction(1, 9), Fraction(3, 4)]
    assert box_counts(vals, [1, 3, 5, 7]) == [(1, 2), (3, 2), (5, 2), (7, 3)]


def test_log2_interval():
    assert log2_interval(8) == (3, 3)
    lo, hi = log2_interval(5)
    assert lo < Fraction(math.log2(5)) + Fraction(1, 10**12) and hi > Fraction(math.log2(5)) - Fraction(1, 10**12)
    assert lo <= hi
    with pytest.raises(ValueError):
        log2_interval(0)


def test_local_dimension():
    assert local_dim_lower(3) == Fraction(1, 6)
    assert local_dim_lower(1) == Fraction(1, 2)
    assert [local_branch_count(3, A, k) for k in range(5)] == [1, 2, 4, 8, 16]


def test_bilipschitz_examples():
    res = bilipschitz_check(3, A, B)
    assert res.ok and res.lower == Fraction(1, 64) and res.upper == 64
    with pytest.raises(ValueError):
        bilipschitz_check(3, A, A)
    with pytest.raises(ValueError):
        bilipschitz_check(3, A, parse_expansion("0.(01)"))


def test_bilipschitz_all_pairs_r3():
    pts = enumerate_gamma_points(3, 3)
    pairs = list(itertools.combinations(pts, 2))
    assert len(pairs) == 28
    assert all(bilipschitz_check(3, a, b).ok for a, b in pairs)
    ys = [tau(p) for p in pts]
    assert all(a < b for a, b in zip(ys, ys[1:]))


def test_bilipschitz_r4_sample():
    pts = enumerate_gamma_points(4, 2)
    assert all(bilipschitz_check(4, a, b).ok for a, b in itertools.combinations(pts, 2))


def test_level_image_points():
    assert level_image_point(1, parse_expansion("0.(01)")) == Fraction(2, 3)
    assert level_image_point(3, A) != level_image_point(3, B)


def test_transfer():
    for r, k in [(3, 4), (2, 5), (4, 2)]:
        for depth, nx, ny in transfer_gap(r, k):
            assert max(nx, ny) <= (2 ** (2 * r) + 1) * min(nx, ny)


def test_spectrum():
    rows = spectrum_table(64)
    assert [row.r for row in rows] == list(range(1, 65))
    assert rows[-1].gamma_dim[0] > Fraction(4, 5)
    assert all(row.gamma_dim[1] <= 1 for row in rows)
    assert all(rows[i].gamma_dim[0] <= rows[i + 1].gamma_dim[1] for i in range(2, 63))
    r0 = least_r0(rows)
    assert r0 == 5
    assert all(row.exceeds_bound for row in rows if row.r >= r0)
    assert not rows[3].exceeds_bound
    bounds = [row.paper_bound[0] for row in rows[7:]]
    assert all(a < b for a, b in zip(bounds, bounds[1:]))
    assert rows[4].count == 14 and rows[4].catalan_r == 42


def test_spectrum_float_cross_check():
    for row in spectrum_table(20):
        approx = math.log2(row.count) / (2 * row.r)
        assert float(row.gamma_dim[0]) == pytest.approx(approx, abs=1e-12)
        assert float(row.paper_bound[1]) == pytest.approx(1 - 2 * math.log(row.r) / row.r, abs=1e-12)


def test_spectrum_rejects_small():
    with pytest.raises(ValueError):
        spectrum_table(1)


def test_gamma_requires_block_structure():
    x = BinaryExpansion((0, 0, 0, 1, 1, 1), (0, 0, 1, 0, 1, 1))
    assert in_gamma(3, x)
    assert not in_gamma(3, BinaryExpansion((0, 1), (0, 0, 0, 1, 1, 1)))
