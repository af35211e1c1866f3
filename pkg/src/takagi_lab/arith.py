"""Exact binary expansions and digit statistics.

A :class:`BinaryExpansion` is a finite digit prefix followed by an
infinitely repeated word.  The two expansions of a dyadic rational
(``...0000`` and ``...1111``) are different objects: level-set counts keep
them apart, and :func:`real_equal` is the predicate that identifies them.

All values are :class:`fractions.Fraction`; nothing in this module rounds.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

Digits = tuple[int, ...]

ZEROS: Digits = (0,)
ONES: Digits = (1,)

_LITERAL = re.compile(r"0\.([01]*)(?:\(([01]*)\))?")


class ExpansionSyntaxError(ValueError):
    """Raised for malformed expansion literals."""


def _as_digits(bits: Iterable[int] | str) -> Digits:
    if isinstance(bits, str):
        out = tuple(int(c) for c in bits)
    else:
        out = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"binary digits must be 0 or 1, got {bits!r}")
    return out


def _primitive_root(word: Digits) -> Digits:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


def _bits(word: Sequence[int]) -> str:
    return "".join(map(str, word))


@dataclass(frozen=True, eq=False)
class BinaryExpansion:
    """x = 0.b_1 b_2 ... given as ``prefix`` then ``period`` repeated forever.

    ``period == (0,)`` is the Zeros tail and ``(1,)`` the Ones tail.  A
    longer period is reduced to its primitive root and prefix digits that
    belong to the cycle are absorbed, so periodic tails have a unique
    structural form.  Zeros/Ones prefixes are kept as written (``0.0110``
    keeps four digits); equality and hashing ignore such trailing digits.
    """

    prefix: Digits = ()
    period: Digits = ZEROS

    def __post_init__(self) -> None:
        prefix = _as_digits(self.prefix)
        period = _primitive_root(_as_digits(self.period))
        if not period:
            raise ValueError("periodic word must be nonempty")
        if len(period) > 1:
            while prefix and prefix[-1] == period[-1]:
                period = (period[-1],) + period[:-1]
                prefix = prefix[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    # -- structure ---------------------------------------------------------

    @property
    def tail_kind(self) -> str:
        if self.period == ZEROS:
            return "zeros"
        if self.period == ONES:
            return "ones"
        return "periodic"

    @property
    def is_dyadic(self) -> bool:
        return len(self.period) == 1

    @cached_property
    def key(self) -> tuple[Digits, Digits]:
        """Canonical structural key; trailing tail digits are stripped."""
        prefix = self.prefix
        if len(self.period) == 1:
            t = self.period[0]
            while prefix and prefix[-1] == t:
                prefix = prefix[:-1]
        return prefix, self.period

    def digit(self, j: int) -> int:
        """The j-th binary digit, 1-based."""
        if j < 1:
            raise IndexError("digits are indexed from 1")
        n = len(self.prefix)
        if j <= n:
            return self.prefix[j - 1]
        return self.period[(j - n - 1) % len(self.period)]

    def digits(self, n: int) -> Digits:
        """The first n digits, materialising the tail as needed."""
        p = self.prefix
        if n <= len(p):
            return p[:n]
        extra = n - len(p)
        q = len(self.period)
        return p + self.period * (extra // q) + self.period[: extra % q]

    # -- value -------------------------------------------------------------

    @cached_property
    def value(self) -> Fraction:
        n = len(self.prefix)
        head = int(_bits(self.prefix), 2) if n else 0
        q = len(self.period)
        cycle = Fraction(int(_bits(self.period), 2), (1 << q) - 1)
        return (head + cycle) / (1 << n)

    # -- derived expansions ------------------------------------------------

    def complement(self) -> "BinaryExpansion":
        """The digit-wise flip, which represents 1 - x."""
        return BinaryExpansion(
            tuple(1 - b for b in self.prefix), tuple(1 - b for b in self.period)
        )

    def half(self) -> "BinaryExpansion":
        """x / 2 (a right shift)."""
        return BinaryExpansion((0,) + self.prefix, self.period)

    def prepend(self, word: Sequence[int] | str) -> "BinaryExpansion":
        """0.word followed by the digits of x, i.e. word/2^n + x/2^n."""
        return BinaryExpansion(_as_digits(word) + self.prefix, self.period)

    def shift(self, c: int) -> "BinaryExpansion":
        """The expansion of the digits after position c (2^c x mod 1)."""
        n = len(self.prefix)
        if c <= n:
            return BinaryExpansion(self.prefix[c:], self.period)
        k = (c - n) % len(self.period)
        return BinaryExpansion((), self.period[k:] + self.period[:k])

    # -- ordering ----------------------------------------------------------

    def compare(self, other: "BinaryExpansion") -> int:
        """Lexicographic digit comparison: -1, 0 or 1."""
        horizon = max(len(self.prefix), len(other.prefix)) + lcm(
            len(self.period), len(other.period)
        )
        a, b = self.digits(horizon), other.digits(horizon)
        return (a > b) - (a < b)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryExpansion):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: "BinaryExpansion") -> bool:
        return self.compare(other) < 0

    def __le__(self, other: "BinaryExpansion") -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: "BinaryExpansion") -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: "BinaryExpansion") -> bool:
        return self.compare(other) >= 0

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        if self.period == ZEROS:
            return "0." + (_bits(self.prefix) or "0")
        return f"0.{_bits(self.prefix)}({_bits(self.period)})"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"BinaryExpansion({self.render()!r})"


@dataclass(frozen=True)
class DigitProfile:
    j: int
    ones: int
    zeros: int
    deficiency: int


def parse_expansion(text: str) -> BinaryExpansion:
    """Parse ``0.<bits>`` or ``0.<bits>(<bits>)``.

    An all-ones period is normalised to the Ones tail and an all-zeros
    period to the Zeros tail.
    """
    m = _LITERAL.fullmatch(text.strip())
    if m is None:
        raise ExpansionSyntaxError(f"malformed expansion literal: {text!r}")
    head, cycle = m.group(1), m.group(2)
    if cycle is None:
        if not head:
            raise ExpansionSyntaxError(f"no digits in {text!r}")
        return BinaryExpansion(_as_digits(head), ZEROS)
    if not cycle:
        raise ExpansionSyntaxError(f"empty periodic word in {text!r}")
    return BinaryExpansion(_as_digits(head), _as_digits(cycle))


def to_rational(x: BinaryExpansion) -> Fraction:
    return x.value


def from_rational(q: Fraction | int | str, tail: str = "zeros") -> BinaryExpansion:
    """Binary expansion of a rational in [0, 1].

    Dyadic rationals get the Zeros tail unless ``tail="ones"`` is asked for
    (ignored at 0, which has no Ones expansion).  The value 1 is always
    ``0.(1)``.
    """
    q = Fraction(q)
    if not 0 <= q <= 1:
        raise ValueError(f"{q} is outside [0, 1]")
    if q == 1:
        return BinaryExpansion((), ONES)
    num, den = q.numerator, q.denominator
    if den & (den - 1) == 0:
        n = den.bit_length() - 1
        digits = tuple(int(c) for c in format(num, "b").zfill(n)) if n else ()
        if tail == "ones" and num > 0:
            # ...b_n with b_n = 1 becomes ...0111...
            return BinaryExpansion(digits[:-1] + (0,), ONES)
        return BinaryExpansion(digits, ZEROS)
    seen: dict[int, int] = {}
    out: list[int] = []
    r = num
    while r not in seen:
        seen[r] = len(out)
        r *= 2
        out.append(1 if r >= den else 0)
        if r >= den:
            r -= den
    start = seen[r]
    return BinaryExpansion(tuple(out[:start]), tuple(out[start:]))


def deficiencies(x: BinaryExpansion, n: int) -> list[int]:
    """[D_1(x), ..., D_n(x)]."""
    out, d = [], 0
    for b in x.digits(n):
        d += 1 - 2 * b
        out.append(d)
    return out


def word_deficiencies(word: Sequence[int] | str) -> list[int]:
    out, d = [], 0
    for b in _as_digits(word):
        d += 1 - 2 * b
        out.append(d)
    return out


def digit_profile(x: BinaryExpansion, j: int) -> DigitProfile:
    if j < 1:
        raise ValueError("j must be >= 1")
    ones = sum(x.digits(j))
    return DigitProfile(j=j, ones=ones, zeros=j - ones, deficiency=j - 2 * ones)


def real_equal(a: BinaryExpansion, b: BinaryExpansion) -> bool:
    return a.value == b.value


def dyadic_expansion(k: int, n: int) -> BinaryExpansion:
    """k/2^n with the Zeros tail, keeping exactly n prefix digits."""
    if not 0 <= k < (1 << n) or n < 0:
        if k == 1 << n:
            return BinaryExpansion((), ONES)
        raise ValueError(f"k={k} out of range for depth {n}")
    digits = tuple(int(c) for c in format(k, "b").zfill(n)) if n else ()
    return BinaryExpansion(digits, ZEROS)


def format_rational(q: Fraction) -> str:
    """Serialise as ``p/q`` (``p/1`` for integers) for all outputs."""
    return f"{q.numerator}/{q.denominator}"
