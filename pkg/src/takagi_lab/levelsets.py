"""Balance sets, local level sets and certified covers of global level sets."""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .arith import BinaryExpansion, word_deficiencies
from .evaluation import TAU_MAX, tau

FINITE_Z = "finite"
INFINITE_Z = "infinite"


def _flip(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(1 - b for b in word)


def _split_blocks(word: Sequence[int]) -> list[tuple[int, ...]]:
    """Cut a balanced word at its internal zeros of D."""
    blocks, start, d = [], 0, 0
    for i, b in enumerate(word):
        d += 1 - 2 * b
        if d == 0:
            blocks.append(tuple(word[start : i + 1]))
            start = i + 1
    if start != len(word):
        raise ValueError("word is not balanced")
    return blocks


@dataclass(frozen=True)
class BlockDecomposition:
    """Balance points c_1 < c_2 < ... of an expansion and its blocks.

    For ``tail_kind == "finite"`` ``balance_points`` is the complete list and
    the digits after the last point form one infinite block ``tail``.  For
    ``"infinite"`` the digits are ``anchor`` followed by ``cycle`` repeated,
    with D = 0 at both ends of every cycle; ``balance_points`` then lists the
    points up to ``j_max``.
    """

    balance_points: tuple[int, ...]
    tail_kind: str
    blocks: tuple[tuple[int, ...], ...]
    anchor: tuple[int, ...] = ()
    cycle: tuple[int, ...] = ()
    tail: BinaryExpansion | None = None

    @property
    def last_point(self) -> int:
        return self.balance_points[-1] if self.balance_points else 0


def _walk(x: BinaryExpansion):
    n0 = len(x.prefix)
    ds = word_deficiencies(x.prefix)
    d0 = ds[-1] if ds else 0
    partial = word_deficiencies(x.period)
    return n0, ds, d0, partial, partial[-1]


def _all_points(x: BinaryExpansion):
    """Balance points and tail kind; for infinite Z, the points inside the
    prefix plus the in-period offsets that recur forever."""
    n0, ds, d0, partial, delta = _walk(x)
    q = len(x.period)
    points = [j for j, d in enumerate(ds, start=1) if d == 0]
    if delta == 0:
        offsets = [i for i, p in enumerate(partial, start=1) if d0 + p == 0]
        if offsets:
            return points, INFINITE_Z, offsets
        return points, FINITE_Z, []
    lo, hi = min(partial), max(partial)
    t = 0
    while True:
        base = d0 + t * delta
        if delta > 0 and base + lo > 0:
            break
        if delta < 0 and base + hi < 0:
            break
        points.extend(n0 + t * q + i for i, p in enumerate(partial, start=1) if base + p == 0)
        t += 1
    return points, FINITE_Z, []


def balance_set(x: BinaryExpansion, j_max: int | None = None) -> BlockDecomposition:
    """Balance set Z(x) and block structure.

    ``j_max`` truncates the listed points; it is required to be finite only
    for display purposes, the decomposition itself is always exact.
    """
    points, kind, offsets = _all_points(x)
    n0, q = len(x.prefix), len(x.period)
    if kind == FINITE_Z:
        last = points[-1] if points else 0
        word = x.digits(last)
        blocks = _split_blocks(word)
        listed = [c for c in points if j_max is None or c <= j_max]
        return BlockDecomposition(
            balance_points=tuple(listed),
            tail_kind=FINITE_Z,
            blocks=tuple(blocks),
            tail=x.shift(last),
        )
    first = n0 + offsets[0]
    anchor = x.digits(first)
    cycle = x.digits(first + q)[first:]
    limit = j_max if j_max is not None else first + q
    listed = list(points)
    t = 0
    while n0 + t * q + offsets[0] <= limit:
        listed.extend(c for c in (n0 + t * q + i for i in offsets) if c <= limit)
        t += 1
    blocks = _split_blocks(x.digits(listed[-1])) if listed else []
    return BlockDecomposition(
        balance_points=tuple(listed),
        tail_kind=INFINITE_Z,
        blocks=tuple(blocks),
        anchor=anchor,
        cycle=cycle,
    )


def balance_points_upto(x: BinaryExpansion, j: int) -> list[int]:
    return list(balance_set(x, j).balance_points)


def _normalise(blocks: Sequence[Sequence[int]]) -> tuple[int, ...]:
    out: list[int] = []
    for blk in blocks:
        out.extend(_flip(blk) if blk[0] == 1 else blk)
    return tuple(out)


def leftmost_equivalent(x: BinaryExpansion) -> BinaryExpansion:
    """The least member of L_x^loc: every block flipped to start with 0."""
    bd = balance_set(x)
    if bd.tail_kind == FINITE_Z:
        head = _normalise(bd.blocks)
        t = bd.tail
        if t.digit(1) == 1:
            t = t.complement()
        return t.prepend(head)
    head = _normalise(_split_blocks(bd.anchor))
    cyc = _normalise(_split_blocks(bd.cycle))
    return BinaryExpansion(head, cyc)


def enumerate_local_level_set(
    x: BinaryExpansion, block_limit: int | None = None
) -> list[BinaryExpansion]:
    """Members of L_x^loc obtained by flipping blocks.

    With a finite balance set and ``block_limit`` unset (or large enough)
    the result is the whole local level set, infinite tail block included.
    Otherwise only the first ``block_limit`` blocks vary and the rest of the
    expansion is kept.
    """
    bd = balance_set(x)
    if bd.tail_kind == FINITE_Z and (block_limit is None or block_limit >= len(bd.blocks)):
        blocks = list(bd.blocks)
        tails = [bd.tail, bd.tail.complement()]
        rest_at = None
    else:
        if block_limit is None:
            raise ValueError("block_limit is required when the balance set is infinite")
        points = _first_points(x, block_limit)
        if len(points) < block_limit:
            raise ValueError("not enough finite blocks")
        blocks = _split_blocks(x.digits(points[-1])) if points else []
        rest_at = points[-1] if points else 0
        tails = [x.shift(rest_at)]
    out = set()
    for choice in itertools.product((False, True), repeat=len(blocks)):
        head: list[int] = []
        for blk, f in zip(blocks, choice):
            head.extend(_flip(blk) if f else blk)
        for t in tails:
            out.add(t.prepend(head))
    return sorted(out)


def _first_points(x: BinaryExpansion, k: int) -> list[int]:
    if k == 0:
        return []
    j = max(2 * k, 2)
    while True:
        bd = balance_set(x, j)
        if len(bd.balance_points) >= k or bd.tail_kind == FINITE_Z:
            return list(bd.balance_points[:k])
        j *= 2


@dataclass(frozen=True)
class LocalLevelSet:
    representative: BinaryExpansion
    blocks: BlockDecomposition
    finite: bool
    members: tuple[BinaryExpansion, ...] = ()

    @property
    def expansion_count(self) -> int | None:
        return len(self.members) if self.finite else None

    @property
    def distinct_real_count(self) -> int | None:
        return len({m.value for m in self.members}) if self.finite else None


def local_level_set(x: BinaryExpansion) -> LocalLevelSet:
    bd = balance_set(x)
    rep = leftmost_equivalent(x)
    if bd.tail_kind == FINITE_Z:
        return LocalLevelSet(rep, bd, True, tuple(enumerate_local_level_set(x)))
    return LocalLevelSet(rep, bd, False)


# -- certified covers ------------------------------------------------------


@dataclass(frozen=True)
class LevelCover:
    """Sound cover of L(y): every solution lies in a ``possible`` interval
    [k/2^n, (k+1)/2^n] or is listed in ``confirmed``."""

    level: Fraction
    depth: int
    possible: tuple[tuple[int, int], ...]
    confirmed: tuple[BinaryExpansion, ...]
    in_range: bool = True
    nodes_visited: int = 0

    def intervals(self) -> list[tuple[Fraction, Fraction]]:
        scale = 1 << self.depth
        return [(Fraction(k, scale), Fraction(k + 1, scale)) for k, _ in self.possible]

    @property
    def confirmed_reals(self) -> list[Fraction]:
        return sorted({x.value for x in self.confirmed})

    def covers(self, v: Fraction) -> bool:
        if v in set(self.confirmed_reals):
            return True
        return any(a <= v <= b for a, b in self.intervals())


def _dyadic_members(v: Fraction) -> list[BinaryExpansion]:
    from .arith import from_rational

    if v in (0, 1):
        return [from_rational(v)]
    return [from_rational(v), from_rational(v, tail="ones")]


def _explore(p: int, q: int, depth: int, roots):
    """Depth-first branch and bound from the given (k, n, t, d) nodes, where
    t = tau(k/2^n) * 2^n and d = D_n.  Returns surviving leaves, dyadic
    candidates and balanced prefixes (k, n) whose (01)-tail hits the level."""
    leaves: list[tuple[int, int, int, int]] = []
    dyadic: set[Fraction] = set()
    periodic: list[tuple[int, int]] = []
    visited = 0
    stack = list(reversed(roots))
    while stack:
        k, n, t, d = stack.pop()
        visited += 1
        scale = 1 << n
        # y in [t + min(0,d), t + 2/3 + max(0,d)] / 2^n, cleared of denominators
        y3 = 3 * p * scale
        if y3 < 3 * q * (t + min(0, d)) or y3 > 3 * q * (t + max(0, d)) + 2 * q:
            continue
        if d == 0 and 3 * q * t + 2 * q == y3:
            periodic.append((k, n))
        if y3 == 3 * q * (t + min(0, d)):
            # lower contact: tau(w) + d w = min(0, d) forces w = 0 or w = 1
            if d >= 0:
                dyadic.add(Fraction(k, scale))
            if d <= 0:
                dyadic.add(Fraction(k + 1, scale))
            continue
        if n == depth:
            leaves.append((k, n, t, d))
            dyadic.add(Fraction(k, scale))
            dyadic.add(Fraction(k + 1, scale))
            continue
        stack.append((2 * k + 1, n + 1, 2 * t + 1 + d, d - 1))
        stack.append((2 * k, n + 1, 2 * t, d + 1))
    return leaves, dyadic, periodic, visited


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("TAKAGI_THREADS", "1")))
    except ValueError:
        return 1


def enumerate_level_cover(
    y: Fraction | int | str, depth: int, workers: int | None = None
) -> LevelCover:
    """Certified dyadic cover of L(y) at the given depth.

    Nodes are pruned with the envelope of :func:`evaluation.tau_bounds`.
    Exact solutions are confirmed at dyadic endpoints of surviving intervals
    and at balanced prefixes followed by (01) or (10) forever (which
    includes the left endpoints of removed intervals and their mirrors).
    """
    y = Fraction(y)
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if not 0 <= y <= TAU_MAX:
        return LevelCover(level=y, depth=depth, possible=(), confirmed=(), in_range=False)
    p, q = y.numerator, y.denominator
    workers = workers or _workers()
    split = min(depth, (workers - 1).bit_length() + 2) if workers > 1 else 0
    if split:
        frontier, dyadic, periodic, visited = _explore(p, q, split, [(0, 0, 0, 0)])
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(
                    _explore,
                    itertools.repeat(p),
                    itertools.repeat(q),
                    itertools.repeat(depth),
                    [[node] for node in frontier],
                )
            )
        leaves = []
        for lv, dy, pe, vi in results:
            leaves.extend(lv)
            dyadic |= dy
            periodic.extend(pe)
            visited += vi - 1
    else:
        leaves, dyadic, periodic, visited = _explore(p, q, depth, [(0, 0, 0, 0)])
    leaves = sorted((k, n) for k, n, _, _ in leaves)
    confirmed: set[BinaryExpansion] = set()
    for v in dyadic:
        if 0 <= v <= 1 and tau(_dyadic_members(v)[0]) == y:
            confirmed.update(_dyadic_members(v))
    for k, n in set(periodic):
        word = tuple(int(c) for c in format(k, "b").zfill(n)) if n else ()
        confirmed.add(BinaryExpansion(word, (0, 1)))
        confirmed.add(BinaryExpansion(word, (1, 0)))
    ordered = sorted(confirmed, key=lambda e: (e.value, e.digits(64), e.key))
    return LevelCover(
        level=y,
        depth=depth,
        possible=tuple(leaves),
        confirmed=tuple(ordered),
        nodes_visited=visited,
    )


# -- expected cardinality --------------------------------------------------


def lattice_path_count(m: int) -> int:
    """Number of +-1 paths of length 2m from 0 back to 0, by enumeration."""
    return sum(
        1 for steps in itertools.product((1, -1), repeat=2 * m) if sum(steps) == 0
    )


def r_of(word: Sequence[int] | str) -> int:
    """Number of indices j >= 1 with D_j(word) = 0 for a nonnegative balanced word."""
    ds = word_deficiencies(word)
    if ds and (ds[-1] != 0 or min(ds) < 0):
        raise ValueError(f"{word!r} is not a nonnegative balanced word")
    return sum(1 for d in ds if d == 0)


def flip_class_total(m: int) -> int:
    """L_m as the sum of 2^r(B) over breakpoint words of length 2m."""
    from .omega import enumerate_breakpoints

    return sum(1 << r_of(b.word) for b in enumerate_breakpoints(m, "full"))


def expected_cardinality_partial(M: int) -> Fraction:
    """S_M = sum_{m <= M} binom(2m, m) / 2^(2m+1), exactly."""
    if M < 0:
        raise ValueError("M must be >= 0")
    num = sum(comb(2 * m, m) << (2 * (M - m)) for m in range(M + 1))
    return Fraction(num, 1 << (2 * M + 1))
