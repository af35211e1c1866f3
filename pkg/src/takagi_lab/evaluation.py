"""Exact evaluation of the Takagi function and certified envelopes.

Appending a dyadic block: if x0 = 0.b_1...b_n and x = x0 + w/2^n then

    tau(x) = tau(x0) + (tau(w) + D_n(x0) * w) / 2^n.

For a single digit this gives tau(0.b_1...b_n) = sum_j b_j (1 + D_{j-1}) / 2^j,
which is how prefixes are evaluated.  Periodic tails solve the same relation
for the repeating word once, so every evaluation stays rational.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import BinaryExpansion, _as_digits

TAU_MAX = Fraction(2, 3)


def _tau_word(word: Sequence[int]) -> tuple[Fraction, int]:
    """(tau(0.word), D_n(word)) for a finite word of length n."""
    n = len(word)
    num, d = 0, 0
    for j, b in enumerate(word, start=1):
        if b:
            num += (1 + d) << (n - j)
        d += 1 - 2 * b
    return Fraction(num, 1 << n), d


def tau_dyadic(k: int, n: int) -> Fraction:
    """tau(k/2^n) summed directly from the distance-to-nearest-integer series.

    Terms with index >= n vanish, so the sum is finite.
    """
    if n < 0 or not 0 <= k <= (1 << n):
        raise ValueError(f"k={k} out of range for depth {n}")
    full = 1 << n
    total = 0
    for j in range(n):
        r = (k << j) % full
        total += min(r, full - r) << (n - j)
    return Fraction(total, 1 << (2 * n))


def _periodic_tau(word: Sequence[int]) -> tuple[Fraction, Fraction]:
    """(tau(w), w) for the purely periodic point w = 0.(word)."""
    q = len(word)
    t0, dq = _tau_word(word)
    scale = (1 << q) - 1
    w = Fraction(int("".join(map(str, word)), 2), scale)
    # tau(w) = tau(w0) + (tau(w) + D_q w) / 2^q, solved for tau(w)
    return (t0 * (1 << q) + dq * w) / scale, w


def tau(x: BinaryExpansion) -> Fraction:
    """Exact tau(x) for any representable expansion."""
    if x.is_dyadic:
        v = x.value
        if v == 1:
            return Fraction(0)
        n = v.denominator.bit_length() - 1
        word = tuple(int(c) for c in format(v.numerator, "b").zfill(n)) if n else ()
        return _tau_word(word)[0]
    tw, w = _periodic_tau(x.period)
    tp, dp = _tau_word(x.prefix)
    return tp + (tw + dp * w) / (1 << len(x.prefix))


@dataclass(frozen=True)
class TauBounds:
    """Certified range of tau over the dyadic interval [k/2^n, (k+1)/2^n]."""

    k: int
    n: int
    deficiency: int
    lo: Fraction
    hi: Fraction

    @property
    def left(self) -> Fraction:
        return Fraction(self.k, 1 << self.n)

    @property
    def right(self) -> Fraction:
        return Fraction(self.k + 1, 1 << self.n)

    def contains(self, y: Fraction) -> bool:
        return self.lo <= y <= self.hi


def bounds_from(tau_x0: Fraction, d: int, n: int, k: int = 0) -> TauBounds:
    scale = Fraction(1, 1 << n)
    lo = max(Fraction(0), tau_x0 + scale * min(0, d))
    hi = min(TAU_MAX, tau_x0 + scale * (TAU_MAX + max(0, d)))
    return TauBounds(k=k, n=n, deficiency=d, lo=lo, hi=hi)


def tau_bounds(prefix: Sequence[int] | str) -> TauBounds:
    word = _as_digits(prefix)
    t0, d = _tau_word(word)
    k = int("".join(map(str, word)), 2) if word else 0
    return bounds_from(t0, d, len(word), k)


def verify_functional_equations(x: BinaryExpansion) -> bool:
    """tau(x) == tau(1-x) and 2 tau(x/2) == tau(x) + x, exactly."""
    tx = tau(x)
    return tx == tau(x.complement()) and 2 * tau(x.half()) == tx + x.value
