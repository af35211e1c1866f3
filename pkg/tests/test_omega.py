import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import expansions, omega_members
from takagi_lab.arith import (
    BinaryExpansion,
    dyadic_expansion,
    from_rational,
    parse_expansion,
    word_deficiencies,
)
from takagi_lab.evaluation import tau
from takagi_lab.omega import (
    EMPTY,
    FULL,
    SMALL,
    catalan,
    catalan_closed,
    catalan_table,
    dyck_count,
    enumerate_breakpoints,
    fine_partition_cell,
    first_violation,
    in_half_omega,
    is_breakpoint,
    omega_membership,
    removed_interval,
    removed_intervals,
    removed_length_partial_sum,
)

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796]


def scan_violation(x: BinaryExpansion, horizon: int = 400):
    for j, d in enumerate(word_deficiencies(x.digits(horizon)), start=1):
        if d < 0:
            return j
    return None


def brute_breakpoints(m: int, small: bool = False) -> list[str]:
    out = []
    for w in itertools.product("01", repeat=2 * m):
        ds = word_deficiencies("".join(w))
        if ds and (min(ds) < 0 or ds[-1] != 0):
            continue
        if small and m and w[-2:] != ("1", "1"):
            continue
        out.append("".join(w))
    return out


# -- membership --------------------------------------------------------------


def test_membership_examples():
    assert omega_membership(parse_expansion("0.(01)")).member
    m = omega_membership(parse_expansion("0.0110"))
    assert not m.member and m.violation == 3
    assert omega_membership(parse_expansion("0.0"))
    assert not omega_membership(parse_expansion("0.(1)"))


def test_one_third_is_max():
    rng = random.Random(3)
    for _ in range(500):
        n = rng.randint(1, 20)
        x = dyadic_expansion(rng.randrange(1 << n), n)
        if omega_membership(x).member:
            assert x.value <= Fraction(1, 3)


@given(expansions())
def test_membership_matches_scan(x):
    # D moves by at most 1 per digit, so 400 digits settle any case drawn here
    assert first_violation(x) == scan_violation(x)


@given(omega_members())
def test_generated_members(x):
    assert omega_membership(x).member


def test_half_omega():
    assert in_half_omega(parse_expansion("0.(001)"))
    assert not in_half_omega(parse_expansion("0.(01)"))


# -- breakpoints -------------------------------------------------------------


def test_breakpoint_examples():
    assert [b.word for b in enumerate_breakpoints(1)] == ["01"]
    assert [b.word for b in enumerate_breakpoints(2)] == ["0011", "0101"]
    assert [b.word for b in enumerate_breakpoints(2, SMALL)] == ["0011"]
    assert [b.word for b in enumerate_breakpoints(0)] == [""]


@pytest.mark.parametrize("m", range(7))
def test_breakpoints_against_brute_force(m):
    assert [b.word for b in enumerate_breakpoints(m)] == brute_breakpoints(m)
    assert [b.word for b in enumerate_breakpoints(m, SMALL)] == brute_breakpoints(m, small=True)


def test_catalan_law():
    assert [len(enumerate_breakpoints(m)) for m in range(11)] == CATALAN
    assert [catalan(m) for m in range(11)] == CATALAN
    assert [catalan_closed(m) for m in range(11)] == CATALAN


def test_catalan_table():
    assert catalan_table(10) == CATALAN
    assert catalan_table(200)[-1] == catalan_closed(200)


def test_catalan_large():
    assert catalan(100) == catalan_closed(100)
    assert dyck_count(30) == catalan_closed(30)


def test_is_breakpoint():
    assert is_breakpoint("0101", FULL) and not is_breakpoint("0101", SMALL)
    assert is_breakpoint("0011", SMALL)
    assert not is_breakpoint("10") and not is_breakpoint("001")


# -- removed intervals ---------------------------------------------------------


def test_removed_empty():
    iv = removed_interval(EMPTY)
    assert (iv.left_value, iv.right_value, iv.length) == (Fraction(1, 3), Fraction(1), Fraction(2, 3))


def test_removed_0011():
    iv = removed_interval("0011")
    assert (iv.l, iv.k) == (1, 2)
    assert (iv.left_value, iv.right_value, iv.length) == (Fraction(5, 24), Fraction(1, 4), Fraction(1, 24))
    assert iv.left.value == parse_expansion("0.0011(01)").value


def test_removed_rejects_full_only():
    with pytest.raises(ValueError):
        removed_interval("0101")


def test_removed_identities_and_disjointness():
    ivs = removed_intervals(16)
    for iv in ivs:
        assert iv.length == Fraction(1, 3 << (iv.k + iv.l)) or iv.breakpoint == EMPTY
        assert iv.right_value - iv.left_value == iv.length
        assert tau(iv.left) - tau(iv.right) == iv.length
        assert 0 <= iv.left_value < iv.right_value <= 1
    for a, b in zip(ivs, ivs[1:]):
        assert a.right_value <= b.left_value
    for iv in ivs:
        assert omega_membership(iv.left).member
        if iv.breakpoint != EMPTY:
            assert omega_membership(iv.right).member


def test_removed_points_are_not_members():
    rng = random.Random(5)
    for iv in removed_intervals(10):
        for _ in range(5):
            v = iv.left_value + (iv.right_value - iv.left_value) * Fraction(rng.randint(1, 99), 100)
            assert not omega_membership(from_rational(v)).member


def test_partial_sums():
    assert removed_length_partial_sum(0) == Fraction(2, 3)
    assert removed_length_partial_sum(4) == Fraction(17, 24)
    assert removed_length_partial_sum(16) == Fraction(80429, 98304)
    sums = [removed_length_partial_sum(L) for L in range(0, 21, 2)]
    assert all(a < b for a, b in zip(sums[1:], sums[2:])) and sums[-1] < 1


def test_partial_sum_matches_intervals():
    total = sum((iv.length for iv in removed_intervals(12)), Fraction(0))
    assert total == removed_length_partial_sum(12)


# -- fine partition ------------------------------------------------------------


def test_cell_empty_is_half_omega():
    cell = fine_partition_cell("")
    assert cell.contains(parse_expansion("0.(001)"))
    assert not cell.contains(parse_expansion("0.(01)"))


def test_cell_01():
    cell = fine_partition_cell("01")
    assert cell.hull == (Fraction(1, 4), Fraction(3, 8))
    assert cell.contains(parse_expansion("0.010(01)"))
    assert not cell.contains(parse_expansion("0.01(01)"))
    assert not cell.contains(parse_expansion("0.0011"))


def test_cell_rejects_non_breakpoint():
    with pytest.raises(ValueError):
        fine_partition_cell("0110")


def test_cells_disjoint():
    cells = [fine_partition_cell(b) for m in range(6) for b in enumerate_breakpoints(m)]
    rng = random.Random(17)
    for _ in range(10_000):
        d, digits = 0, []
        for _ in range(rng.randint(0, 14)):
            b = rng.getrandbits(1) if d > 0 else rng.choice((0, 0, 1))
            digits.append(b)
            d += 1 - 2 * b
        x = BinaryExpansion(tuple(digits), rng.choice([(0,), (0, 1), (0, 0, 1), (1,)]))
        hits = [c for c in cells if c.contains(x)]
        assert len(hits) <= 1
        for c in hits:
            lo, hi = c.hull
            assert lo <= x.value <= hi
