"""Run configuration and CSV / JSON / SVG emitters.

Rationals are written as "p/q" strings.  Floats appear only as SVG
coordinates.  Nothing time- or host-dependent goes into an output, so a
fixed configuration always produces the same bytes.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

from . import __version__
from .arith import format_rational

MAX_DEPTH = 64
FORMATS = ("csv", "json", "svg")
COMMANDS = ("eval", "levelset", "localset", "omega", "measure", "dim", "verify")


@dataclass(frozen=True)
class RunConfig:
    command: str
    depth: int = 12
    r: int = 3
    m_max: int = 5
    output_format: str = "csv"
    output_path: str | None = None
    seed: int = 42
    # command-specific arguments, kept as sorted (name, value) pairs
    params: tuple[tuple[str, Any], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if not 0 <= self.depth <= MAX_DEPTH:
            raise ValueError(f"depth must lie in [0, {MAX_DEPTH}]")
        if self.r < 1 or self.m_max < 0:
            raise ValueError("need r >= 1 and m_max >= 0")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown format {self.output_format!r}")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def param(self, name: str, default: Any = None) -> Any:
        return dict(self.params).get(name, default)

    def header(self) -> dict[str, Any]:
        d = asdict(self)
        d.pop("output_path")
        d["params"] = {k: v for k, v in self.params}
        return d


@dataclass
class Table:
    columns: tuple[str, ...]
    rows: list[dict[str, Any]]
    summary: str = ""
    ok: bool = True
    # objects the svg views need, never serialised
    extra: dict[str, Any] = field(default_factory=dict)


def cell(v: Any) -> Any:
    """Serialise one value: rationals as p/q, booleans as lowercase words."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, (int, str)) or v is None:
        return v
    return str(v)


def render_csv(cfg: RunConfig, table: Table) -> str:
    buf = io.StringIO()
    buf.write(f"# command: {cfg.command}\n")
    buf.write(f"# config: {json.dumps(cfg.header(), sort_keys=True)}\n")
    buf.write(f"# version: {__version__}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow(["" if row.get(c) is None else cell(row.get(c)) for c in table.columns])
    return buf.getvalue()


def render_json(cfg: RunConfig, table: Table) -> str:
    doc = {
        "command": cfg.command,
        "config": cfg.header(),
        "version": __version__,
        "rows": [{c: cell(row.get(c)) for c in table.columns} for row in table.rows],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


# -- SVG ---------------------------------------------------------------------

W, H, PAD = 640, 400, 40


def _fmt(v: float) -> str:
    return f"{v:.3f}"


class _Canvas:
    def __init__(self, x_range: tuple[float, float], y_range: tuple[float, float], title: str):
        self.x0, self.x1 = x_range
        self.y0, self.y1 = y_range
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
            f'viewBox="0 0 {W} {H}">',
            f'<rect width="{W}" height="{H}" fill="white"/>',
            f'<text x="{PAD}" y="{PAD - 14}" font-family="sans-serif" font-size="13">{title}</text>',
        ]
        self._axes()

    def sx(self, x: float) -> float:
        span = (self.x1 - self.x0) or 1.0
        return PAD + (x - self.x0) / span * (W - 2 * PAD)

    def sy(self, y: float) -> float:
        span = (self.y1 - self.y0) or 1.0
        return H - PAD - (y - self.y0) / span * (H - 2 * PAD)

    def _axes(self):
        l, r, b, t = PAD, W - PAD, H - PAD, PAD
        self.parts.append(
            f'<path d="M{l},{t} L{l},{b} L{r},{b}" fill="none" stroke="black" stroke-width="1"/>'
        )
        for x, anchor in ((self.x0, l), (self.x1, r)):
            self.parts.append(
                f'<text x="{anchor}" y="{b + 16}" font-family="sans-serif" font-size="10" '
                f'text-anchor="middle">{x:g}</text>'
            )
        for y, anchor in ((self.y0, b), (self.y1, t)):
            self.parts.append(
                f'<text x="{l - 6}" y="{anchor + 3}" font-family="sans-serif" font-size="10" '
                f'text-anchor="end">{y:.4g}</text>'
            )

    def polyline(self, pts: Iterable[tuple[float, float]], color="steelblue", width=1.0):
        coords = " ".join(f"{_fmt(self.sx(x))},{_fmt(self.sy(y))}" for x, y in pts)
        self.parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="{width}"/>'
        )

    def hline(self, y: float, color="gray"):
        self.parts.append(
            f'<line x1="{PAD}" y1="{_fmt(self.sy(y))}" x2="{W - PAD}" y2="{_fmt(self.sy(y))}" '
            f'stroke="{color}" stroke-dasharray="4 3"/>'
        )

    def bar(self, a: float, b: float, y: float, color="crimson"):
        x0, x1 = self.sx(a), self.sx(b)
        self.parts.append(
            f'<rect x="{_fmt(x0)}" y="{_fmt(self.sy(y) - 3)}" width="{_fmt(max(x1 - x0, 1.0))}" '
            f'height="6" fill="{color}" fill-opacity="0.7"/>'
        )

    def dot(self, x: float, y: float, color="black"):
        self.parts.append(f'<circle cx="{_fmt(self.sx(x))}" cy="{_fmt(self.sy(y))}" r="2.5" fill="{color}"/>')

    def svg(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _floats(pts: Sequence[tuple[Fraction, Fraction]]) -> list[tuple[float, float]]:
    return [(float(x), float(y)) for x, y in pts]


def svg_graph(points: Sequence[tuple[Fraction, Fraction]], title: str = "tau") -> str:
    c = _Canvas((0.0, 1.0), (0.0, 2 / 3), title)
    c.polyline(_floats(points))
    return c.svg()


def svg_cover(
    points: Sequence[tuple[Fraction, Fraction]],
    level: Fraction,
    bars: Sequence[tuple[Fraction, Fraction]],
    confirmed: Sequence[Fraction] = (),
) -> str:
    c = _Canvas((0.0, 1.0), (0.0, 2 / 3), f"cover of L({format_rational(level)})")
    c.polyline(_floats(points), color="lightsteelblue")
    c.hline(float(level))
    for a, b in bars:
        c.bar(float(a), float(b), float(level))
    for x in confirmed:
        c.dot(float(x), float(level))
    return c.svg()


def svg_staircase(points: Sequence[tuple[Fraction, Fraction]]) -> str:
    c = _Canvas((0.0, 1.0), (0.0, 1.0), "tau^S")
    c.polyline(_floats(points), color="darkgreen")
    return c.svg()


def svg_dims(rows: Sequence[tuple[int, Fraction, Fraction]]) -> str:
    """rows of (r, gamma_dim_lo, bound_hi)."""
    r_max = max(r for r, _, _ in rows)
    lo = min(min(float(g), float(b)) for _, g, b in rows)
    c = _Canvas((1.0, float(r_max)), (min(lo, 0.0), 1.0), "box dimension of Gamma_2r vs bound")
    c.polyline([(r, float(g)) for r, g, _ in rows], color="navy")
    c.polyline([(r, float(b)) for r, _, b in rows], color="darkorange")
    return c.svg()


def emit_svg(kind: str, data: dict[str, Any], path: str | Path) -> None:
    if kind == "graph":
        text = svg_graph(data["points"], data.get("title", "tau"))
    elif kind == "cover":
        text = svg_cover(data["points"], data["level"], data["bars"], data.get("confirmed", ()))
    elif kind == "staircase":
        text = svg_staircase(data["points"])
    elif kind == "dims":
        text = svg_dims(data["rows"])
    else:
        raise ValueError(f"unknown svg kind {kind!r}")
    write_text(path, text)
