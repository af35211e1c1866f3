"""Command line entry point: ``takagi-lab <command> [options]``.

Without ``--output`` the rendered document goes to stdout and the one-line
summary to stderr; with it the document is written to the file and the
summary printed on stdout.  Exit codes: 0 success, 1 a verification
failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import itertools
import random
import re
import sys
from fractions import Fraction
from typing import Sequence

from .arith import BinaryExpansion, from_rational, parse_expansion
from .dimension import (
    alphabet_X,
    bilipschitz_check,
    box_dimension_gamma,
    enumerate_gamma_points,
    least_r0,
    spectrum_table,
)
from .evaluation import tau, tau_dyadic
from .levelsets import enumerate_level_cover, enumerate_local_level_set, leftmost_equivalent
from .measure import mass_partial_sum, selfsimilar_sides, tau_s
from .omega import (
    SMALL,
    catalan,
    enumerate_breakpoints,
    omega_membership,
    removed_intervals,
    removed_length_partial_sum,
)
from .report import (
    COMMANDS,
    MAX_DEPTH,
    RunConfig,
    Table,
    emit_svg,
    render_csv,
    render_json,
    write_text,
)
from .verify import SUITES, random_omega_member, run_suite

MAX_SVG_DEPTH = 16
_EXPANSION = re.compile(r"\s*0\.")


def parse_point(text: str) -> BinaryExpansion:
    """Accept an expansion literal like ``0.0(01)`` or a rational like ``5/16``."""
    if text is None:
        raise ValueError("a point is required (--x)")
    if _EXPANSION.match(text):
        return parse_expansion(text.strip())
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot read {text!r} as an expansion or a rational") from None
    return from_rational(q)


def _grid(depth: int, f) -> list[tuple[Fraction, Fraction]]:
    if depth > MAX_SVG_DEPTH:
        raise ValueError(f"plots need depth <= {MAX_SVG_DEPTH}")
    n = 1 << depth
    return [(Fraction(k, n), f(k, depth)) for k in range(n + 1)]


def _tau_grid(depth: int):
    return _grid(depth, lambda k, n: tau_dyadic(k, n) if k < 1 << n else Fraction(0))


def _tau_s_grid(depth: int):
    def f(k, n):
        x = from_rational(Fraction(k, 1 << n))
        return tau_s(x).value

    return _grid(depth, f)


# -- commands ----------------------------------------------------------------


def cmd_eval(cfg: RunConfig) -> Table:
    x = parse_point(cfg.param("x"))
    t = tau(x)
    s = tau_s(x)
    m = omega_membership(x)
    row = {
        "x": x.render(),
        "value": x.value,
        "tau": t,
        "tau_s": s.value,
        "in_omega": m.member,
        "violation": m.violation,
        "witness": s.witness.render() if s.witness is not None else None,
    }
    return Table(tuple(row), [row], f"tau({x}) = {_q(t)}, tau_S = {_q(s.value)}")


def _q(v: Fraction) -> str:
    return str(v) if v.denominator != 1 else str(v.numerator)


def cmd_levelset(cfg: RunConfig) -> Table:
    y = Fraction(cfg.param("y"))
    cover = enumerate_level_cover(y, cfg.depth)
    rows = [
        {"kind": "confirmed", "left": e.value, "right": e.value, "expansion": e.render(), "tau": tau(e)}
        for e in cover.confirmed
    ]
    rows += [{"kind": "possible", "left": a, "right": b} for a, b in cover.intervals()]
    flag = "" if cover.in_range else " (level outside [0, 2/3])"
    summary = (
        f"L({_q(y)}) at depth {cfg.depth}: {len(cover.confirmed_reals)} confirmed reals, "
        f"{len(cover.possible)} possible intervals{flag}"
    )
    return Table(("kind", "left", "right", "expansion", "tau"), rows, summary, extra={"cover": cover})


def cmd_localset(cfg: RunConfig) -> Table:
    x = parse_point(cfg.param("x"))
    members = enumerate_local_level_set(x, block_limit=cfg.param("blocks"))
    rows = [{"expansion": m.render(), "value": m.value, "tau": tau(m)} for m in members]
    rep = leftmost_equivalent(x)
    summary = (
        f"{len(members)} expansions, {len({m.value for m in members})} distinct reals, "
        f"level {_q(tau(x))}, leftmost {rep}"
    )
    return Table(("expansion", "value", "tau"), rows, summary)


def cmd_omega(cfg: RunConfig) -> Table:
    what = cfg.param("table")
    if what == "intervals":
        ivs = removed_intervals(cfg.param("max_len"))
        rows = [
            {
                "B": iv.breakpoint.word or "empty",
                "l": iv.l,
                "k": iv.k,
                "left": iv.left_value,
                "right": iv.right_value,
                "length": iv.length,
            }
            for iv in ivs
        ]
        total = sum((iv.length for iv in ivs), Fraction(0))
        return Table(("B", "l", "k", "left", "right", "length"), rows,
                     f"{len(ivs)} removed intervals, total length {_q(total)}")
    if what == "breakpoints":
        rows = []
        for m in range(cfg.m_max + 1):
            small = {b.word for b in enumerate_breakpoints(m, SMALL)} if m else set()
            for b in enumerate_breakpoints(m):
                rows.append({"m": m, "word": b.word, "small": b.word in small, "value": b.value})
        return Table(("m", "word", "small", "value"), rows, f"{len(rows)} breakpoint words up to m={cfg.m_max}")
    if what == "partial":
        rows = [
            {"max_len": L, "sum": removed_length_partial_sum(L)}
            for L in range(0, cfg.param("max_len") + 1, 2)
        ]
        return Table(("max_len", "sum"), rows, f"partial sum {_q(rows[-1]['sum'])}")
    if what == "membership":
        x = parse_point(cfg.param("x"))
        m = omega_membership(x)
        row = {"x": x.render(), "member": m.member, "violation": m.violation}
        return Table(tuple(row), [row], f"{x}: {'member' if m.member else f'violation at j={m.violation}'}")
    raise ValueError(f"unknown omega table {what!r}")


def cmd_measure(cfg: RunConfig) -> Table:
    what = cfg.param("table")
    if what == "mass":
        rows = []
        for m in range(cfg.m_max + 1):
            c = catalan(m)
            rows.append({"m": m, "count": c, "mass": Fraction(c, 1 << (2 * m + 1)),
                         "cumulative": mass_partial_sum(m)})
        return Table(("m", "count", "mass", "cumulative"), rows,
                     f"cumulative mass {_q(rows[-1]['cumulative'])} at m={cfg.m_max}")
    if what == "selfsim":
        rng = random.Random(cfg.seed)
        rows, ok = [], True
        for _ in range(cfg.param("cases")):
            B = rng.choice(enumerate_breakpoints(rng.randint(0, cfg.m_max)))
            a, b = sorted((random_omega_member(rng), random_omega_member(rng)), key=lambda e: e.value)
            lhs, rhs = selfsimilar_sides(B, a, b)
            ok &= lhs == rhs
            rows.append({"B": B.word or "empty", "x1": a.render(), "x2": b.render(),
                         "lhs": lhs, "rhs": rhs, "ok": lhs == rhs})
        return Table(("B", "x1", "x2", "lhs", "rhs", "ok"), rows,
                     f"self-similarity {'holds' if ok else 'FAILS'} on {len(rows)} cases", ok)
    raise ValueError(f"unknown measure table {what!r}")


def cmd_dim(cfg: RunConfig) -> Table:
    what = cfg.param("table")
    r = cfg.r
    if what == "alphabet":
        words = alphabet_X(r).words
        rows = [{"r": r, "word": w} for w in words]
        return Table(("r", "word"), rows, f"|X_{2 * r}| = {len(words)}")
    if what == "boxcount":
        est = box_dimension_gamma(r, cfg.param("k"))
        rows = [{"r": r, "depth": n, "count": c} for n, c in est.scales]
        slope = _q(est.slope) if est.slope is not None else f"~{float(est.slope_interval[0]):.6f}"
        return Table(("r", "depth", "count"), rows, f"Gamma_{2 * r} box-count slope {slope}")
    if what == "spectrum":
        table = spectrum_table(cfg.param("r_max"))
        rows = [
            {
                "r": row.r,
                "alpha": row.alpha,
                "count": row.count,
                "gamma_dim_lo": row.gamma_dim[0],
                "gamma_dim_hi": row.gamma_dim[1],
                "paper_bound": row.paper_bound[1],
                "exceeds": row.exceeds_bound,
            }
            for row in table
        ]
        summary = f"r0 = {least_r0(table)}, gamma_dim(r={table[-1].r}) >= {float(table[-1].gamma_dim[0]):.5f}"
        return Table(("r", "alpha", "count", "gamma_dim_lo", "gamma_dim_hi", "paper_bound", "exceeds"),
                     rows, summary, extra={"spectrum": table})
    if what == "bilipschitz":
        pts = enumerate_gamma_points(r, cfg.param("k"))
        rows, ok = [], True
        for a, b in itertools.combinations(pts, 2):
            res = bilipschitz_check(r, a, b)
            ok &= res.ok
            rows.append({"r": r, "x1": a.render(), "x2": b.render(), "ratio": res.ratio, "ok": res.ok})
        return Table(("r", "x1", "x2", "ratio", "ok"), rows,
                     f"{sum(row['ok'] for row in rows)}/{len(rows)} pairs within [2^-{2 * r}, 2^{2 * r}]", ok)
    raise ValueError(f"unknown dim table {what!r}")


def cmd_verify(cfg: RunConfig) -> Table:
    checks = run_suite(cfg.param("suite"), cfg.seed, cfg.param("cases"))
    rows = [{"suite": c.suite, "name": c.name, "passed": c.passed, "detail": c.detail} for c in checks]
    failed = [c for c in checks if not c.passed]
    summary = f"{len(checks) - len(failed)}/{len(checks)} checks passed"
    if failed:
        summary += "; failed: " + ", ".join(c.name for c in failed)
    return Table(("suite", "name", "passed", "detail"), rows, summary, not failed)


HANDLERS = {
    "eval": cmd_eval,
    "levelset": cmd_levelset,
    "localset": cmd_localset,
    "omega": cmd_omega,
    "measure": cmd_measure,
    "dim": cmd_dim,
    "verify": cmd_verify,
}


def _svg(cfg: RunConfig, table: Table, path: str) -> None:
    extra = table.extra
    if cfg.command == "eval":
        emit_svg("graph", {"points": _tau_grid(cfg.depth)}, path)
    elif cfg.command == "levelset":
        cover = extra["cover"]
        emit_svg("cover", {
            "points": _tau_grid(min(cfg.depth, 12)),
            "level": cover.level,
            "bars": cover.intervals(),
            "confirmed": cover.confirmed_reals,
        }, path)
    elif cfg.command == "measure":
        emit_svg("staircase", {"points": _tau_s_grid(cfg.depth)}, path)
    elif cfg.command == "dim" and "spectrum" in extra:
        emit_svg("dims", {"rows": [(row.r, row.gamma_dim[0], row.paper_bound[1]) for row in extra["spectrum"]]}, path)
    else:
        raise ValueError(f"no svg view for {cfg.command}")


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("csv", "json", "svg"), default="csv")
    common.add_argument("--output", dest="output_path", default=None, help="output file (default: stdout)")
    common.add_argument("--depth", type=int, default=12, help=f"dyadic depth, at most {MAX_DEPTH}")
    common.add_argument("--r", type=int, default=3)
    common.add_argument("--m-max", dest="m_max", type=int, default=5)
    common.add_argument("--seed", type=int, default=42)

    p = argparse.ArgumentParser(prog="takagi-lab", description="Exact Takagi function experiments.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="tau and tau^S at a point")
    s.add_argument("--x", required=True)

    s = sub.add_parser("levelset", parents=[common], help="certified cover of L(y)")
    s.add_argument("--y", required=True)

    s = sub.add_parser("localset", parents=[common], help="flip-equivalent expansions of x")
    s.add_argument("--x", required=True)
    s.add_argument("--blocks", type=int, default=None)

    s = sub.add_parser("omega", parents=[common], help="removed intervals, breakpoints, partial sums")
    s.add_argument("--table", choices=("intervals", "breakpoints", "partial", "membership"), default="intervals")
    s.add_argument("--max-len", dest="max_len", type=int, default=16)
    s.add_argument("--x", default=None)

    s = sub.add_parser("measure", parents=[common], help="cell masses and self-similarity checks")
    s.add_argument("--table", choices=("mass", "selfsim"), default="mass")
    s.add_argument("--cases", type=int, default=100)

    s = sub.add_parser("dim", parents=[common], help="Gamma_2r alphabets, box counts, spectrum")
    s.add_argument("--table", choices=("alphabet", "boxcount", "spectrum", "bilipschitz"), default="spectrum")
    s.add_argument("--k", type=int, default=3)
    s.add_argument("--r-max", dest="r_max", type=int, default=64)

    s = sub.add_parser("verify", parents=[common], help="seeded invariant suite")
    s.add_argument("--suite", choices=("all",) + tuple(SUITES), default="all")
    s.add_argument("--cases", type=int, default=1000)
    return p


_BASE = {"command", "output_format", "output_path", "depth", "r", "m_max", "seed"}


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    params = tuple(sorted((k, v) for k, v in vars(ns).items() if k not in _BASE))
    return RunConfig(
        command=ns.command,
        depth=ns.depth,
        r=ns.r,
        m_max=ns.m_max,
        output_format=ns.output_format,
        output_path=ns.output_path,
        seed=ns.seed,
        params=params,
    )


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = config_from_args(ns)
        assert cfg.command in COMMANDS
        table = HANDLERS[cfg.command](cfg)
        if cfg.output_format == "svg":
            if cfg.output_path is None:
                raise ValueError("svg output needs --output")
            _svg(cfg, table, cfg.output_path)
            doc = None
        else:
            render = render_csv if cfg.output_format == "csv" else render_json
            doc = render(cfg, table)
    except ValueError as e:
        print(f"takagi-lab: error: {e}", file=sys.stderr)
        return 2
    except ArithmeticError as e:
        # an internal identity check failed
        print(f"takagi-lab: verification failed: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"takagi-lab: cannot write output: {e}", file=sys.stderr)
        return 2
    if doc is not None:
        if cfg.output_path is None:
            sys.stdout.write(doc)
            print(table.summary, file=sys.stderr)
        else:
            write_text(cfg.output_path, doc)
            print(table.summary)
    else:
        print(table.summary)
    return 0 if table.ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
