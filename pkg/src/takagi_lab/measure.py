"""The Takagi singular function tau^S and its measure mu_S.

On the deficient digit set tau^S(x) = tau(x) + x; elsewhere it takes the
value at the greatest point of the set below x.  Interval masses are
differences of tau^S.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import BinaryExpansion
from .evaluation import tau
from .omega import (
    FULL,
    BreakpointWord,
    catalan_table,
    first_violation,
    fine_partition_cell,
)


def sup_omega_below(x: BinaryExpansion) -> BinaryExpansion:
    """Greatest member of Omega that is <= x.

    At the first index j with D_j(x) < 0 we have D_{j-1} = 0 and b_j = 1;
    the answer keeps b_1..b_{j-1}, puts 0 at j and then takes 1 whenever the
    deficiency allows, which gives the tail (01) forever.
    """
    j = first_violation(x)
    if j is None:
        return x
    return BinaryExpansion(x.digits(j - 1), (0, 1))


@dataclass(frozen=True)
class SingularValue:
    point: BinaryExpansion
    value: Fraction
    # None when point is itself in Omega
    witness: BinaryExpansion | None = None

    @property
    def in_omega(self) -> bool:
        return self.witness is None


def tau_s(x: BinaryExpansion) -> SingularValue:
    w = sup_omega_below(x)
    value = tau(w) + w.value
    return SingularValue(point=x, value=value, witness=None if w is x else w)


def mu_s_interval(a: BinaryExpansion, b: BinaryExpansion) -> Fraction:
    """mu_S([a, b]) = tau^S(b) - tau^S(a)."""
    if a.value > b.value:
        raise ValueError(f"empty interval: {a} > {b}")
    return tau_s(b).value - tau_s(a).value


@dataclass(frozen=True)
class CellMass:
    base: BreakpointWord
    tau_image: tuple[Fraction, Fraction]
    mass: Fraction


def fine_partition_mass(B: BreakpointWord | str) -> CellMass:
    """Mass 2^-(2m+1) of Omega(B') and its tau-image [tau(B'), tau(B') + 2^-(2m+1)]."""
    cell = fine_partition_cell(B)
    mass = Fraction(1, 1 << (2 * cell.m + 1))
    t0 = tau(cell.base.expansion())
    return CellMass(base=cell.base, tau_image=(t0, t0 + mass), mass=mass)


def cell_point(B: BreakpointWord | str, inner: BinaryExpansion) -> BinaryExpansion:
    """B' + (x'/2) / 2^(2m): the point of Omega(B') labelled by x' in Omega."""
    cell = fine_partition_cell(B)
    return cell.point(inner.half())


def selfsimilar_sides(
    B: BreakpointWord | str, x1p: BinaryExpansion, x2p: BinaryExpansion
) -> tuple[Fraction, Fraction]:
    """Both sides of the cell scaling law for mu_S.

    With x_i = B' + (x_i'/2)/2^(2m) and x_i' in Omega,
    mu_S([x_1, x_2]) = 2^-(2m+1) (mu_S([x_1', x_2']) + (x_2' - x_1')).
    """
    cell = fine_partition_cell(B)
    for p in (x1p, x2p):
        if first_violation(p) is not None:
            raise ValueError(f"{p} is not in Omega")
    if x1p.value > x2p.value:
        raise ValueError("x1' must not exceed x2'")
    x1, x2 = cell.point(x1p.half()), cell.point(x2p.half())
    lhs = mu_s_interval(x1, x2)
    rhs = (mu_s_interval(x1p, x2p) + (x2p.value - x1p.value)) / (1 << (2 * cell.m + 1))
    return lhs, rhs


def verify_selfsimilar_measure(
    B: BreakpointWord | str, x1p: BinaryExpansion, x2p: BinaryExpansion
) -> bool:
    lhs, rhs = selfsimilar_sides(B, x1p, x2p)
    return lhs == rhs


def tau_image_identity(B: BreakpointWord | str, inner: BinaryExpansion) -> bool:
    """2^(2m+1) (tau(x) - tau(B')) == tau^S(x') for x = B' + (x'/2)/2^(2m)."""
    cell = fine_partition_cell(B)
    x = cell.point(inner.half())
    t0 = tau(cell.base.expansion())
    return (tau(x) - t0) * (1 << (2 * cell.m + 1)) == tau_s(inner).value


def mass_partial_sum(M: int) -> Fraction:
    """sum_{m <= M} C_m 2^-(2m+1), exactly."""
    if M < 0:
        raise ValueError("M must be >= 0")
    num = sum(c << (2 * (M - m)) for m, c in enumerate(catalan_table(M)))
    return Fraction(num, 1 << (2 * M + 1))


__all__ = [
    "FULL",
    "CellMass",
    "SingularValue",
    "cell_point",
    "fine_partition_mass",
    "mass_partial_sum",
    "mu_s_interval",
    "selfsimilar_sides",
    "sup_omega_below",
    "tau_image_identity",
    "tau_s",
    "verify_selfsimilar_measure",
]
