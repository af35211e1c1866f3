"""The deficient digit set: membership, breakpoints, removed intervals.

Omega = {x : D_j(x) >= 0 for all j}.  Its complement in [0, 1) is the
disjoint union of open intervals I_B indexed by the small breakpoint words
B (nonnegative balanced words ending in 11) together with (1/3, 1).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from .arith import BinaryExpansion, ONES, ZEROS, _as_digits, word_deficiencies
from .evaluation import tau

FULL = "full"
SMALL = "small"


@dataclass(frozen=True)
class Membership:
    member: bool
    violation: int | None = None

    def __bool__(self) -> bool:
        return self.member


def first_violation(x: BinaryExpansion, strict: bool = False) -> int | None:
    """Least j with D_j(x) < 0 (D_j(x) <= 0 when ``strict``), or None.

    Decided exactly: after the prefix the deficiency moves by a fixed
    amount per period, so one period suffices when that increment is
    nonnegative and the failing period is computed directly otherwise.
    """
    limit = 0 if strict else -1
    d = 0
    for j, b in enumerate(x.prefix, start=1):
        d += 1 - 2 * b
        if d <= limit:
            return j
    partial = word_deficiencies(x.period)
    q, delta, lowest = len(x.period), partial[-1], min(partial)
    t = 0
    if d + lowest > limit:
        if delta >= 0:
            return None
        t = -(-(d + lowest - limit) // -delta)
    base = d + t * delta
    for i, p in enumerate(partial, start=1):
        if base + p <= limit:
            return len(x.prefix) + t * q + i
    raise AssertionError("violation search failed")


def omega_membership(x: BinaryExpansion) -> Membership:
    j = first_violation(x)
    return Membership(member=j is None, violation=j)


def in_half_omega(x: BinaryExpansion) -> bool:
    """x in (1/2)Omega, i.e. D_j(x) > 0 for every j >= 1."""
    return first_violation(x, strict=True) is None


# -- breakpoint words --------------------------------------------------------


@dataclass(frozen=True, order=True)
class BreakpointWord:
    word: str
    kind: str = FULL

    @property
    def m(self) -> int:
        return len(self.word) // 2

    @property
    def digits(self) -> tuple[int, ...]:
        return _as_digits(self.word)

    @property
    def value(self) -> Fraction:
        n = len(self.word)
        return Fraction(int(self.word, 2), 1 << n) if n else Fraction(0)

    def expansion(self) -> BinaryExpansion:
        return BinaryExpansion(self.digits, ZEROS)


def is_breakpoint(word: Sequence[int] | str, kind: str = FULL) -> bool:
    w = _as_digits(word)
    if len(w) % 2:
        return False
    if not w:
        return True
    ds = word_deficiencies(w)
    if min(ds) < 0 or ds[-1] != 0:
        return False
    return kind == FULL or w[-2:] == (1, 1)


def _dyck_words(m: int) -> Iterator[str]:
    """Nonnegative balanced words of length 2m in lexicographic order."""
    n = 2 * m
    buf: list[str] = []

    def rec(d: int) -> Iterator[str]:
        i = len(buf)
        if i == n:
            yield "".join(buf)
            return
        remaining = n - i
        if d + 1 <= remaining - 1:
            buf.append("0")
            yield from rec(d + 1)
            buf.pop()
        if d >= 1:
            buf.append("1")
            yield from rec(d - 1)
            buf.pop()

    yield from rec(0)


def enumerate_breakpoints(m: int, kind: str = FULL) -> list[BreakpointWord]:
    """Breakpoint words of length 2m by backtracking on D_j >= 0."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if kind not in (FULL, SMALL):
        raise ValueError(f"unknown kind {kind!r}")
    words = _dyck_words(m)
    if kind == SMALL and m > 0:
        words = (w for w in words if w.endswith("11"))
    return [BreakpointWord(w, kind) for w in words]


def dyck_count(m: int, strict: bool = False) -> int:
    """Count nonnegative balanced words of length 2m by dynamic programming
    over the running deficiency (strictly positive inside when ``strict``)."""
    if m == 0:
        return 1
    n = 2 * m
    floor = 1 if strict else 0
    ways = {0: 1}
    for i in range(1, n + 1):
        nxt: dict[int, int] = {}
        for d, c in ways.items():
            for step in (1, -1):
                e = d + step
                if e < floor and i < n:
                    continue
                if e < 0 or e > n - i:
                    continue
                nxt[e] = nxt.get(e, 0) + c
        ways = nxt
    return ways.get(0, 0)


def catalan(m: int) -> int:
    """C_m as a path count; the closed form binom(2m, m)/(m+1) is checked alongside."""
    if m < 0:
        raise ValueError("m must be >= 0")
    count = dyck_count(m)
    closed = comb(2 * m, m) // (m + 1)
    if count != closed:
        raise ArithmeticError(f"Catalan mismatch at m={m}: {count} != {closed}")
    return count


def catalan_table(M: int) -> list[int]:
    """[C_0, ..., C_M] by the first-return split of a nonnegative balanced
    word, checked against the closed form."""
    if M < 0:
        raise ValueError("M must be >= 0")
    table = [1]
    for n in range(1, M + 1):
        # 0 B1 1 B2 where 0 B1 1 is the part up to the first return to D = 0
        table.append(sum(table[i] * table[n - 1 - i] for i in range(n)))
    for m, c in enumerate(table):
        if c != comb(2 * m, m) // (m + 1):
            raise ArithmeticError(f"Catalan mismatch at m={m}")
    return table


def catalan_closed(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


# -- removed intervals -------------------------------------------------------


@dataclass(frozen=True)
class RemovedInterval:
    breakpoint: BreakpointWord
    l: int
    k: int
    left: BinaryExpansion
    right: BinaryExpansion
    length: Fraction

    @property
    def left_value(self) -> Fraction:
        return self.left.value

    @property
    def right_value(self) -> Fraction:
        return self.right.value

    def contains(self, v: Fraction) -> bool:
        return self.left_value < v < self.right_value


EMPTY = BreakpointWord("", SMALL)


def removed_interval(B: BreakpointWord | str) -> RemovedInterval:
    """I_B = (B (01)^inf, b_1..b_l 1 0^k) for B = b_1..b_l 0 1^k, and (1/3, 1)
    for the empty word.  The length identities are checked on construction."""
    if isinstance(B, str):
        B = BreakpointWord(B, SMALL)
    w = B.word
    if not w:
        left = BinaryExpansion((), (0, 1))
        right = BinaryExpansion((), ONES)
        iv = RemovedInterval(EMPTY, 0, 0, left, right, Fraction(2, 3))
    else:
        if not is_breakpoint(w, SMALL):
            raise ValueError(f"{w!r} is not a small breakpoint word")
        l = w.rindex("0")
        k = len(w) - l - 1
        digits = _as_digits(w)
        left = BinaryExpansion(digits, (0, 1))
        right = BinaryExpansion(digits[:l] + (1,) + (0,) * k, ZEROS)
        iv = RemovedInterval(
            BreakpointWord(w, SMALL), l, k, left, right, Fraction(1, 3 << (k + l))
        )
    if iv.right.value - iv.left.value != iv.length:
        raise ArithmeticError(f"length identity fails for B={w!r}")
    if tau(iv.left) - tau(iv.right) != iv.length:
        raise ArithmeticError(f"slope -1 identity fails for B={w!r}")
    return iv


def removed_intervals(max_len: int) -> list[RemovedInterval]:
    """I_B for the empty word and every small B with |B| <= max_len, sorted
    by left endpoint."""
    out = [removed_interval(EMPTY)]
    for m in range(2, max_len // 2 + 1):
        out.extend(removed_interval(b) for b in enumerate_breakpoints(m, SMALL))
    out.sort(key=lambda iv: iv.left_value)
    return out


def removed_length_partial_sum(max_len: int) -> Fraction:
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    total = Fraction(2, 3)
    for m in range(2, max_len // 2 + 1):
        for b in _dyck_words(m):
            if b.endswith("11"):
                total += Fraction(1, 3 << (len(b) - 1))
    return total


# -- fine partition ----------------------------------------------------------


@dataclass(frozen=True)
class FinePartitionCell:
    """Omega(B') = B' + 2^(-2m) * (1/2)Omega."""

    base: BreakpointWord

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def scale(self) -> Fraction:
        return Fraction(1, 1 << (2 * self.m))

    @property
    def hull(self) -> tuple[Fraction, Fraction]:
        b = self.base.value
        return b, b + Fraction(1, 1 << (2 * self.m + 1))

    def contains(self, x: BinaryExpansion) -> bool:
        n = 2 * self.m
        if x.digits(n) != self.base.digits:
            return False
        return first_violation(x.shift(n), strict=True) is None

    def point(self, inner: BinaryExpansion) -> BinaryExpansion:
        """B' + x'/2^(2m) for x' in (1/2)Omega."""
        return inner.prepend(self.base.digits)


def fine_partition_cell(B: BreakpointWord | str) -> FinePartitionCell:
    if isinstance(B, str):
        B = BreakpointWord(B, FULL)
    if not is_breakpoint(B.word, FULL):
        raise ValueError(f"{B.word!r} is not a breakpoint word")
    return FinePartitionCell(BreakpointWord(B.word, FULL))
