"""Seeded invariant suites behind ``takagi-lab verify``."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .arith import BinaryExpansion, dyadic_expansion, parse_expansion
from .dimension import (
    alphabet_X,
    bilipschitz_check,
    box_dimension_gamma,
    enumerate_gamma_points,
    least_r0,
    spectrum_table,
    transfer_gap,
)
from .evaluation import TAU_MAX, tau, tau_bounds, tau_dyadic, verify_functional_equations
from .levelsets import (
    enumerate_level_cover,
    enumerate_local_level_set,
    expected_cardinality_partial,
    flip_class_total,
    lattice_path_count,
    leftmost_equivalent,
)
from .measure import (
    fine_partition_mass,
    mass_partial_sum,
    mu_s_interval,
    tau_s,
    verify_selfsimilar_measure,
)
from .omega import (
    catalan_closed,
    enumerate_breakpoints,
    omega_membership,
    removed_intervals,
    removed_length_partial_sum,
)


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def random_expansion(rng: random.Random, max_prefix: int = 12, max_period: int = 6) -> BinaryExpansion:
    """Random expansion mixing Zeros, Ones and periodic tails."""
    prefix = tuple(rng.getrandbits(1) for _ in range(rng.randint(0, max_prefix)))
    kind = rng.randrange(3)
    if kind == 0:
        period: tuple[int, ...] = (0,)
    elif kind == 1:
        period = (1,)
    else:
        period = tuple(rng.getrandbits(1) for _ in range(rng.randint(1, max_period)))
    return BinaryExpansion(prefix, period)


def random_omega_member(rng: random.Random, max_prefix: int = 12) -> BinaryExpansion:
    """Random member of Omega: a nonnegative walk then a nonnegative tail."""
    d, digits = 0, []
    for _ in range(rng.randint(0, max_prefix)):
        b = rng.getrandbits(1) if d > 0 else 0
        digits.append(b)
        d += 1 - 2 * b
    tail = rng.choice([(0,), (0, 1), (0, 0, 1), (0, 0, 1, 1), (0, 0, 1, 0, 1, 1)])
    return BinaryExpansion(tuple(digits), tail)


def random_dyadic(rng: random.Random, max_depth: int = 24) -> BinaryExpansion:
    n = rng.randint(1, max_depth)
    return dyadic_expansion(rng.randrange(1 << n), n)


def _eval_suite(rng: random.Random, n: int) -> list[Check]:
    out = []
    ok = all(
        tau(dyadic_expansion(k, 10)) == tau_dyadic(k, 10) for k in range(0, 1 << 10)
    )
    out.append(Check("eval", "digit recurrence equals series at depth 10", ok))
    pts = [random_expansion(rng) for _ in range(n)]
    out.append(Check("eval", "functional equations", all(map(verify_functional_equations, pts))))
    out.append(Check("eval", "range [0, 2/3]", all(0 <= tau(p) <= TAU_MAX for p in pts)))
    sound = True
    for _ in range(max(1, n // 20)):
        word = tuple(rng.getrandbits(1) for _ in range(rng.randint(0, 16)))
        b = tau_bounds(word)
        for _ in range(20):
            x = random_expansion(rng).prepend(word)
            if not b.lo <= tau(x) <= b.hi:
                sound = False
    out.append(Check("eval", "bounds soundness", sound))
    out.append(Check("eval", "tau(0.(01)) = 2/3", tau(parse_expansion("0.(01)")) == TAU_MAX))
    return out


def _levelset_suite(rng: random.Random, n: int) -> list[Check]:
    out = []
    equal = True
    for _ in range(n // 10):
        x = random_expansion(rng, 10, 4)
        t = tau(x)
        try:
            members = enumerate_local_level_set(x)
        except ValueError:
            members = enumerate_local_level_set(x, block_limit=3)
        equal &= all(tau(m) == t for m in members)
        lm = leftmost_equivalent(x)
        equal &= omega_membership(lm).member and tau(lm) == t
    out.append(Check("levelsets", "flip equivalence preserves tau", equal))
    cover = enumerate_level_cover(Fraction(5, 8), 12)
    want = {Fraction(a, b) for a, b in [(5, 16), (3, 8), (7, 16), (9, 16), (5, 8), (11, 16)]}
    out.append(Check("levelsets", "cover of 5/8 confirms six reals", want <= set(cover.confirmed_reals)))
    sound = True
    for _ in range(20):
        x = random_dyadic(rng, 16)
        c = enumerate_level_cover(tau(x), 16)
        sound &= c.covers(x.value)
    out.append(Check("levelsets", "cover soundness", sound))
    s = [expected_cardinality_partial(m) for m in (64, 256)]
    out.append(Check("levelsets", "S_M divergence ratio", abs(expected_cardinality_partial(1024) / s[1] - 2) < Fraction(1, 5)))
    out.append(Check("levelsets", "L_m = binom via lattice paths",
                     all(flip_class_total(m) == lattice_path_count(m) for m in range(7))))
    return out


def _omega_suite(rng: random.Random, n: int) -> list[Check]:
    out = []
    ivs = removed_intervals(16)
    disjoint = all(a.right_value <= b.left_value for a, b in zip(ivs, ivs[1:]))
    out.append(Check("omega", "removed intervals disjoint", disjoint, f"{len(ivs)} intervals"))
    ends = all(omega_membership(iv.left).member for iv in ivs) and all(
        omega_membership(iv.right).member for iv in ivs if iv.breakpoint.word
    )
    out.append(Check("omega", "interval endpoints in Omega", ends))
    sums = [removed_length_partial_sum(L) for L in range(0, 17, 2)]
    out.append(Check("omega", "partial sums increasing below 1",
                     all(a < b for a, b in zip(sums[1:], sums[2:])) and sums[-1] < 1))
    out.append(Check("omega", "Catalan law m <= 10",
                     all(len(enumerate_breakpoints(m)) == catalan_closed(m) for m in range(11))))
    return out


def _measure_suite(rng: random.Random, n: int) -> list[Check]:
    out = []
    pts = sorted((random_expansion(rng) for _ in range(n)), key=lambda e: e.value)
    vals = [tau_s(p).value for p in pts]
    out.append(Check("measure", "tau^S monotone", all(a <= b for a, b in zip(vals, vals[1:]))))
    one = parse_expansion("0.(1)")
    zero = parse_expansion("0.0")
    out.append(Check("measure", "normalisation", tau_s(zero).value == 0 and tau_s(one).value == 1))
    flat = all(mu_s_interval(iv.left, iv.right) == 0 for iv in removed_intervals(12))
    out.append(Check("measure", "mu_S vanishes on removed intervals", flat))
    cases = True
    for _ in range(50):
        m = rng.randint(0, 4)
        words = enumerate_breakpoints(m)
        B = rng.choice(words)
        a, b = sorted((random_omega_member(rng), random_omega_member(rng)), key=lambda e: e.value)
        cases &= verify_selfsimilar_measure(B, a, b)
    out.append(Check("measure", "cell self-similarity", cases))
    out.append(Check("measure", "cell masses", fine_partition_mass("").mass == Fraction(1, 2)
                     and fine_partition_mass("01").mass == Fraction(1, 8)))
    out.append(Check("measure", "mass partial sums",
                     [mass_partial_sum(M) for M in range(3)] == [Fraction(1, 2), Fraction(5, 8), Fraction(11, 16)]))
    return out


def _dim_suite(rng: random.Random, n: int) -> list[Check]:
    out = []
    out.append(Check("dim", "alphabet counts", [alphabet_X(r).count for r in range(1, 6)] == [1, 1, 2, 5, 14]))
    est = box_dimension_gamma(3, 5)
    out.append(Check("dim", "box counts r=3", [c for _, c in est.scales] == [2, 4, 8, 16, 32]
                     and est.slope == Fraction(1, 6)))
    pts = enumerate_gamma_points(3, 3)
    ok = all(bilipschitz_check(3, a, b).ok for a, b in itertools.combinations(pts, 2))
    out.append(Check("dim", "bi-Lipschitz r=3", ok))
    gaps = transfer_gap(3, 4)
    out.append(Check("dim", "dimension transfer", all(max(a, b) <= (2**6 + 1) * min(a, b) for _, a, b in gaps)))
    rows = spectrum_table(64)
    out.append(Check("dim", "spectrum r=64 > 0.8", rows[-1].gamma_dim[0] > Fraction(4, 5),
                     f"r0={least_r0(rows)}"))
    return out


SUITES: dict[str, Callable[[random.Random, int], list[Check]]] = {
    "eval": _eval_suite,
    "levelsets": _levelset_suite,
    "omega": _omega_suite,
    "measure": _measure_suite,
    "dim": _dim_suite,
}


def run_suite(name: str = "all", seed: int = 42, n: int = 1000) -> list[Check]:
    names = list(SUITES) if name == "all" else [name]
    checks: list[Check] = []
    for s in names:
        if s not in SUITES:
            raise ValueError(f"unknown suite {s!r}")
        # each suite gets its own stream so suites are reproducible alone
        checks.extend(SUITES[s](random.Random(f"{seed}:{s}"), n))
    return checks
