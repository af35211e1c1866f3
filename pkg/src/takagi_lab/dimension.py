"""Self-similar Cantor sets inside the deficient digit set and their dimensions.

Gamma_{2r} is the set of x whose balance set is exactly 2r*N with D_j > 0
everywhere else; every length-2r block of such an x is a word of the
alphabet X_{2r}.  Box counts of Gamma_{2r} are exact powers of |X_{2r}|,
so the box dimension is log2|X_{2r}| / 2r.  Logarithms are evaluated in
interval arithmetic so comparisons against the bounds are certified.
"""
from __future__ import annotations

import itertools
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from mpmath import iv

from .arith import BinaryExpansion, _as_digits, word_deficiencies
from .evaluation import tau
from .levelsets import enumerate_local_level_set
from .omega import catalan_closed, dyck_count

IV_PREC = 96

Interval = tuple[Fraction, Fraction]


@contextmanager
def _precision(bits: int):
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def _mpf_to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    f = Fraction(int(man)) * (Fraction(2) ** exp)
    return -f if sign else f


def _bounds(x) -> Interval:
    a, b = x._mpi_
    return _mpf_to_fraction(a), _mpf_to_fraction(b)


def log2_interval(n: int) -> Interval:
    """Certified enclosure of log2(n) for a positive integer n."""
    if n < 1:
        raise ValueError("log2 of a non-positive integer")
    if n & (n - 1) == 0:
        e = Fraction(n.bit_length() - 1)
        return e, e
    with _precision(IV_PREC):
        return _bounds(iv.log(iv.mpf(n)) / iv.log(2))


def log_bound_interval(r: int, denom: int) -> Interval:
    """Certified enclosure of 1 - 2 ln(r) / denom."""
    if r == 1:
        return Fraction(1), Fraction(1)
    with _precision(IV_PREC):
        return _bounds(1 - 2 * iv.log(iv.mpf(r)) / denom)


@dataclass(frozen=True)
class AlphabetX2r:
    r: int
    words: tuple[str, ...]

    @property
    def count(self) -> int:
        return len(self.words)


def _positive_words(r: int) -> Iterator[str]:
    n = 2 * r
    buf: list[str] = []

    def rec(d: int) -> Iterator[str]:
        i = len(buf)
        if i == n:
            yield "".join(buf)
            return
        left = n - i
        # D must stay >= 1 before the last digit and come back to 0 at n
        if d + 1 <= left - 1:
            buf.append("0")
            yield from rec(d + 1)
            buf.pop()
        if d - 1 >= 1 or (d == 1 and left == 1):
            buf.append("1")
            yield from rec(d - 1)
            buf.pop()

    yield from rec(0)


def alphabet_X(r: int) -> AlphabetX2r:
    """Words of length 2r with D_j > 0 for j < 2r and D_2r = 0."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return AlphabetX2r(r=r, words=tuple(_positive_words(r)))


def alphabet_count(r: int) -> int:
    """|X_{2r}| by path counting (usable far beyond enumeration range)."""
    return dyck_count(r, strict=True)


def in_gamma(r: int, x: BinaryExpansion) -> bool:
    """Exact test that the balance set of x is 2rN with D_j > 0 elsewhere."""
    q, n0 = len(x.period), len(x.prefix)
    if word_deficiencies(x.period)[-1] != 0:
        return False
    # past the prefix D_j is periodic, so one joint period decides it
    horizon = n0 + 2 * r * q + q
    for j, d in enumerate(word_deficiencies(x.digits(horizon)), start=1):
        if j % (2 * r) == 0:
            if d != 0:
                return False
        elif d <= 0:
            return False
    return True


def _require_gamma(r: int, x: BinaryExpansion) -> None:
    if not in_gamma(r, x):
        raise ValueError(f"{x} is not in Gamma_{2 * r}")


def enumerate_gamma_points(r: int, k: int) -> list[BinaryExpansion]:
    """All |X_2r|^k points w_1 ... w_{k-1} (w_k)^inf, sorted."""
    if k < 1:
        raise ValueError("k must be >= 1")
    words = alphabet_X(r).words
    pts = []
    for combo in itertools.product(words, repeat=k):
        head = _as_digits("".join(combo[:-1]))
        pts.append(BinaryExpansion(head, _as_digits(combo[-1])))
    return sorted(pts, key=lambda e: e.value)


def box_counts(values: Sequence[Fraction], depths: Sequence[int]) -> list[tuple[int, int]]:
    """Number of grid cells [i/2^n, (i+1)/2^n) met by the values, per depth."""
    out = []
    for n in depths:
        scale = 1 << n
        out.append((n, len({(v * scale).__floor__() for v in values})))
    return out


@dataclass(frozen=True)
class DimensionEstimate:
    r: int
    scales: tuple[tuple[int, int], ...]
    # exact when |X_2r| is a power of two, else None
    slope: Fraction | None
    slope_interval: Interval
    alphabet_count: int


def box_dimension_gamma(r: int, k_max: int) -> DimensionEstimate:
    """Box counts of Gamma_{2r} at scales 2^(-2rk), k = 1..k_max.

    Counts come from the exact values of the enumerated points at depth
    k_max; the slope is log2(N_k)/(2rk), the same at every scale.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    pts = enumerate_gamma_points(r, k_max)
    vals = [p.value for p in pts]
    scales = box_counts(vals, [2 * r * k for k in range(1, k_max + 1)])
    depth, n = scales[-1]
    lo, hi = log2_interval(n)
    slope_iv = (lo / depth, hi / depth)
    slope = slope_iv[0] if slope_iv[0] == slope_iv[1] else None
    return DimensionEstimate(
        r=r,
        scales=tuple(scales),
        slope=slope,
        slope_interval=slope_iv,
        alphabet_count=alphabet_X(r).count,
    )


def local_dim_lower(r: int) -> Fraction:
    """Lower bound 1/(2r) for the dimension of L_x^loc, x in Gamma_{2r}."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return Fraction(1, 2 * r)


def local_branch_count(r: int, x: BinaryExpansion, k: int) -> int:
    """Distinct depth-2rk prefixes among the members of L_x^loc."""
    _require_gamma(r, x)
    if k == 0:
        return 1
    members = enumerate_local_level_set(x, block_limit=k)
    return len({m.digits(2 * r * k) for m in members})


@dataclass(frozen=True)
class BilipschitzResult:
    ok: bool
    ratio: Fraction
    lower: Fraction
    upper: Fraction


def bilipschitz_check(r: int, x1: BinaryExpansion, x2: BinaryExpansion) -> BilipschitzResult:
    """2^(2r) (x2 - x1) >= tau(x2) - tau(x1) >= (x2 - x1) / 2^(2r), exactly."""
    _require_gamma(r, x1)
    _require_gamma(r, x2)
    dx = x2.value - x1.value
    if dx <= 0:
        raise ValueError("need x1 < x2")
    dt = tau(x2) - tau(x1)
    lower, upper = Fraction(1, 1 << (2 * r)), Fraction(1 << (2 * r))
    ratio = dt / dx
    return BilipschitzResult(ok=lower <= ratio <= upper, ratio=ratio, lower=lower, upper=upper)


def level_image_point(r: int, x: BinaryExpansion) -> Fraction:
    _require_gamma(r, x)
    return tau(x)


def transfer_gap(r: int, k_max: int) -> list[tuple[int, int, int]]:
    """(depth, N_x, N_y) at scales 2^(-2rk) for Gamma points and their
    tau-images.  Bi-Lipschitz maps with constant 2^(2r) keep the two
    counts within a factor 2^(2r) + 1 of each other."""
    pts = enumerate_gamma_points(r, k_max)
    xs = [p.value for p in pts]
    ys = [tau(p) for p in pts]
    depths = [2 * r * k for k in range(1, k_max + 1)]
    return [
        (n, nx, ny)
        for (n, nx), (_, ny) in zip(box_counts(xs, depths), box_counts(ys, depths))
    ]


@dataclass(frozen=True)
class SpectrumRow:
    r: int
    alpha: Fraction
    count: int
    catalan_r: int
    gamma_dim: Interval
    paper_bound: Interval
    ordinate_bound: Interval

    @property
    def exceeds_bound(self) -> bool:
        """Certified gamma_dim > 1 - 2 ln r / r."""
        return self.gamma_dim[0] > self.paper_bound[1]


def spectrum_row(r: int) -> SpectrumRow:
    count = alphabet_count(r)
    if count != catalan_closed(r - 1):
        raise ArithmeticError(f"|X_{2 * r}| disagrees with C_(r-1) at r={r}")
    lo, hi = log2_interval(count)
    return SpectrumRow(
        r=r,
        alpha=Fraction(1, 2 * r),
        count=count,
        catalan_r=catalan_closed(r),
        gamma_dim=(lo / (2 * r), hi / (2 * r)),
        paper_bound=log_bound_interval(r, r),
        ordinate_bound=log_bound_interval(r, 2 * r),
    )


def spectrum_table(r_max: int) -> list[SpectrumRow]:
    if r_max < 2:
        raise ValueError("r_max must be >= 2")
    return [spectrum_row(r) for r in range(1, r_max + 1)]


def least_r0(rows: Sequence[SpectrumRow]) -> int | None:
    """Least r such that every row from r on exceeds 1 - 2 ln r / r."""
    r0 = None
    for row in reversed(rows):
        if not row.exceeds_bound:
            break
        r0 = row.r
    return r0


def binomial_count(r: int) -> int:
    """|X_2r| from the closed form C_(r-1) = binom(2r-2, r-1)/r."""
    return comb(2 * r - 2, r - 1) // r
