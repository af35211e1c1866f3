import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import dyadics, expansions, words
from takagi_lab.arith import BinaryExpansion, dyadic_expansion, parse_expansion
from takagi_lab.evaluation import (
    TAU_MAX,
    bounds_from,
    tau,
    tau_bounds,
    tau_dyadic,
    verify_functional_equations,
)


def series(v: Fraction, terms: int) -> Fraction:
    """Partial sum of dist(2^n v, Z) / 2^n; the remainder is at most 2^-terms."""
    total = Fraction(0)
    for n in range(terms):
        f = (v * (1 << n)) % 1
        total += min(f, 1 - f) / (1 << n)
    return total


@pytest.mark.parametrize(
    "k, n, expected",
    [(1, 1, Fraction(1, 2)), (3, 3, Fraction(5, 8)), (1, 3, Fraction(3, 8)), (0, 0, 0), (1, 0, 0)],
)
def test_tau_dyadic_examples(k, n, expected):
    assert tau_dyadic(k, n) == expected


@pytest.mark.parametrize(
    "text, expected",
    [("0.(01)", Fraction(2, 3)), ("0.0(01)", Fraction(1, 2)), ("0.(10)", Fraction(2, 3)),
     ("0.(1)", Fraction(0)), ("0.0", Fraction(0))],
)
def test_tau_examples(text, expected):
    assert tau(parse_expansion(text)) == expected


def test_slope_minus_one_example():
    assert tau(parse_expansion("0.0011(01)")) - tau(parse_expansion("0.01")) == Fraction(1, 24)


def test_periodic_against_series_oracle():
    rng = random.Random(7)
    for _ in range(200):
        prefix = tuple(rng.getrandbits(1) for _ in range(rng.randint(0, 8)))
        period = tuple(rng.getrandbits(1) for _ in range(rng.randint(2, 6)))
        x = BinaryExpansion(prefix, period)
        assert abs(tau(x) - series(x.value, 40)) <= Fraction(1, 1 << 40)


def test_dyadic_against_series_oracle_exact():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(1, 24)
        k = rng.randrange(1 << n)
        v = Fraction(k, 1 << n)
        assert tau(dyadic_expansion(k, n)) == series(v, n) == tau_dyadic(k, n)


def test_ones_tail_evaluates_by_value():
    assert tau(parse_expansion("0.010(1)")) == tau(parse_expansion("0.011"))


@pytest.mark.parametrize(
    "prefix, lo, hi",
    [("01", Fraction(1, 2), Fraction(2, 3)), ("", Fraction(0), Fraction(2, 3)), ("00", Fraction(0), Fraction(2, 3))],
)
def test_bounds_examples(prefix, lo, hi):
    b = tau_bounds(prefix)
    assert (b.lo, b.hi) == (lo, hi)


def test_bounds_width():
    for word in ["0110", "111", "000101", "1"]:
        b = tau_bounds(word)
        assert b.hi - b.lo <= (TAU_MAX + abs(b.deficiency)) / (1 << b.n)


def test_bounds_endpoints():
    b = tau_bounds("011")
    assert b.left == Fraction(3, 8) and b.right == Fraction(1, 2)
    assert b.contains(Fraction(5, 8)) and not b.contains(Fraction(1, 10))
    assert bounds_from(Fraction(0), 5, 1).hi == TAU_MAX


@pytest.mark.parametrize("text", ["0.0110", "0.0", "0.(01)"])
def test_functional_examples(text):
    assert verify_functional_equations(parse_expansion(text))


@given(expansions())
def test_functional_equations_hold(x):
    assert verify_functional_equations(x)


@given(expansions())
def test_range(x):
    assert 0 <= tau(x) <= TAU_MAX


@given(words.filter(lambda w: len(w) <= 16), st.lists(expansions(), min_size=1, max_size=8))
def test_bounds_sound(word, tails):
    b = tau_bounds(word)
    for t in tails:
        assert b.lo <= tau(t.prepend(word)) <= b.hi


@given(words, expansions())
def test_balanced_shift(word, w):
    # append a zero-deficiency block so D_n(x0) = 0
    x0 = word + tuple(1 - b for b in word)
    n = len(x0)
    lhs = tau(w.prepend(x0)) - tau(BinaryExpansion(x0))
    assert lhs == tau(w) / (1 << n)


@given(dyadics(24))
def test_two_routes_agree(kn):
    k, n = kn
    assert tau(dyadic_expansion(k, n)) == tau_dyadic(k, n)
