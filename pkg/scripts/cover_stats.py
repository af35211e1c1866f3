"""Certified cover sizes of L(y) for random levels y = tau(x), by depth.

Counts of surviving dyadic intervals give an empirical view of how the
level sets thin out; they never claim the exact cardinality.
"""
import argparse
import random
import statistics

from takagi_lab.evaluation import tau
from takagi_lab.levelsets import enumerate_level_cover
from takagi_lab.verify import random_dyadic


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--levels", type=int, default=40)
    ap.add_argument("--depth", type=int, default=16)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    levels = [tau(random_dyadic(rng, 12)) for _ in range(args.levels)]
    print("depth  mean intervals  max intervals  mean confirmed")
    for depth in range(4, args.depth + 1, 2):
        covers = [enumerate_level_cover(y, depth) for y in levels]
        sizes = [len(c.possible) for c in covers]
        conf = [len(c.confirmed_reals) for c in covers]
        print(f"{depth:<6} {statistics.mean(sizes):<15.2f} {max(sizes):<14} {statistics.mean(conf):.2f}")


if __name__ == "__main__":
    main()
