"""Growth of the exact sums behind the expected level-set size, the removed
interval lengths and the singular masses."""
import argparse
import math

from takagi_lab.levelsets import expected_cardinality_partial
from takagi_lab.measure import mass_partial_sum
from takagi_lab.omega import removed_length_partial_sum


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=1024)
    args = ap.parse_args()

    print("M      S_M          S_M/sqrt(M)   S_4M/S_M")
    M = 4
    while 4 * M <= args.m_max:
        s, s4 = expected_cardinality_partial(M), expected_cardinality_partial(4 * M)
        print(f"{M:<6} {float(s):<12.6f} {float(s) / math.sqrt(M):<13.6f} {float(s4 / s):.6f}")
        M *= 4
    # binom(2m, m) / 4^m ~ 1/sqrt(pi m), so S_M ~ sqrt(M / pi)
    print(f"1/sqrt(pi) = {1 / math.sqrt(math.pi):.6f}")

    print("\nM      1 - masses(M)")
    for M in (1, 10, 100, 1000):
        print(f"{M:<6} {float(1 - mass_partial_sum(M)):.6f}")

    print("\nlen    1 - removed length")
    for L in range(0, 21, 4):
        print(f"{L:<6} {float(1 - removed_length_partial_sum(L)):.6f}")


if __name__ == "__main__":
    main()
