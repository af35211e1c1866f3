"""Write the standard SVG figures into a directory.

    python scripts/figures.py --out figures
"""
import argparse
from fractions import Fraction
from pathlib import Path

from takagi_lab.arith import from_rational
from takagi_lab.dimension import spectrum_table
from takagi_lab.evaluation import tau_dyadic
from takagi_lab.levelsets import enumerate_level_cover
from takagi_lab.measure import tau_s
from takagi_lab.report import emit_svg


def tau_grid(depth):
    n = 1 << depth
    return [(Fraction(k, n), tau_dyadic(k, depth) if k < n else Fraction(0)) for k in range(n + 1)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures")
    ap.add_argument("--depth", type=int, default=10)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    grid = tau_grid(args.depth)
    emit_svg("graph", {"points": grid}, out / "tau_graph.svg")

    for label, y in [("two_thirds", Fraction(2, 3)), ("five_eighths", Fraction(5, 8)), ("half", Fraction(1, 2))]:
        cover = enumerate_level_cover(y, 12)
        emit_svg(
            "cover",
            {"points": grid, "level": y, "bars": cover.intervals(), "confirmed": cover.confirmed_reals},
            out / f"cover_{label}.svg",
        )
        print(f"L({y}): {len(cover.possible)} intervals, {len(cover.confirmed_reals)} exact points")

    n = 1 << 12
    stair = [(Fraction(k, n), tau_s(from_rational(Fraction(k, n))).value) for k in range(n + 1)]
    emit_svg("staircase", {"points": stair}, out / "tau_s_staircase.svg")

    rows = spectrum_table(64)
    emit_svg("dims", {"rows": [(r.r, r.gamma_dim[0], r.paper_bound[1]) for r in rows]}, out / "spectrum.svg")
    print(f"wrote figures to {out}/")


if __name__ == "__main__":
    main()
