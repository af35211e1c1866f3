"""Print the Gamma_2r dimension table next to the 1 - 2 ln r / r bound.

Counts come from path counting; logarithms are certified intervals.
"""
import argparse

from takagi_lab.dimension import least_r0, spectrum_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r-max", type=int, default=64)
    args = ap.parse_args()
    rows = spectrum_table(args.r_max)
    print(f"{'r':>3} {'|X_2r|':>22} {'C_r':>22} {'dim lo':>9} {'bound':>9}  exceeds")
    for row in rows:
        print(
            f"{row.r:>3} {row.count:>22} {row.catalan_r:>22} "
            f"{float(row.gamma_dim[0]):>9.5f} {float(row.paper_bound[1]):>9.5f}  {row.exceeds_bound}"
        )
    print(f"least r0 = {least_r0(rows)}")


if __name__ == "__main__":
    main()
