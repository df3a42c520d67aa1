"""Static SVG plots of Census and BMatrix descriptors.

Line plots are drawn in data coordinates inside a group whose transform maps
them to pixels, so the ``points`` attributes hold the plotted values
(normalized to the unit square when ``PlotOptions.normalize`` is set).
Output depends only on the inputs: no timestamps, ids or dict-order effects.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Sequence
from xml.sax.saxutils import escape, quoteattr

from ..bmatrix import BMatrix
from ..census import CensusInstance
from ..graph import Graph
from .colormap import ramp

AXIS_BAR = "#3cc8dc"
INK = "#222222"
# distinct hues for superimposed layers
CLASS_COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
MARGIN = 40


class PlotError(ValueError):
    pass


@dataclass(frozen=True)
class PlotOptions:
    normalize: bool = False
    width: int = 480
    height: int = 360
    opacity: float | None = None  # None: 0.15 above 200 lines, else 0.8
    color_mode: str = "uniform"  # or "by_node_index"
    log_color: bool = True
    stroke: str = "#1b2a49"
    title: str | None = None

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise PlotError("plot dimensions must be positive")
        if self.opacity is not None and not 0 < self.opacity <= 1:
            raise PlotError("opacity must lie in (0, 1]")
        if self.color_mode not in ("uniform", "by_node_index"):
            raise PlotError(f"unknown color_mode {self.color_mode!r}")

    def line_opacity(self, count: int) -> float:
        if self.opacity is not None:
            return self.opacity
        return 0.15 if count > 200 else 0.8


@dataclass
class Layer:
    """Lines of one plot in data coordinates, before normalization."""

    kind: str  # "hop" or "census-census"
    lines: list[list[tuple[int, int]]]
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    xlabel: str
    ylabel: str
    normalized: bool = False
    hop_count: int = 0
    colors: list[str] | None = field(default=None, repr=False)


def _num(x: float) -> str:
    if float(x).is_integer():
        return str(int(x))
    return f"{x:.6f}".rstrip("0").rstrip(".")


def _line_colors(count: int, opts: PlotOptions) -> list[str]:
    if opts.color_mode == "by_node_index":
        return [ramp(0.1 + 0.8 * (i / (count - 1) if count > 1 else 0.0)) for i in range(count)]
    return [opts.stroke] * count


def _span(lo: float, hi: float) -> float:
    return hi - lo if hi > lo else 1.0


def hop_census_layer(ci: CensusInstance, opts: PlotOptions = PlotOptions()) -> Layer:
    if ci.node_count == 0:
        raise PlotError("cannot plot an empty census instance")
    lines = [[(h + 1, x) for h, x in enumerate(v)] for v in ci.vectors]
    layer = Layer(
        kind="hop",
        lines=lines,
        x_range=(1, ci.max_length),
        y_range=(0, ci.max_value),
        xlabel="hop",
        ylabel=f"{ci.constituent} degree",
        hop_count=ci.max_length,
        colors=_line_colors(len(lines), opts),
    )
    return _normalized(layer) if opts.normalize else layer


def census_census_layer(x: CensusInstance, y: CensusInstance, opts: PlotOptions = PlotOptions()) -> Layer:
    if [len(v) for v in x.vectors] != [len(v) for v in y.vectors]:
        raise PlotError("census-census plots need two instances of the same shape")
    if x.node_count == 0:
        raise PlotError("cannot plot an empty census instance")
    lines = [list(zip(vx, vy)) for vx, vy in zip(x.vectors, y.vectors)]
    layer = Layer(
        kind="census-census",
        lines=lines,
        x_range=(0, x.max_value),
        y_range=(0, y.max_value),
        xlabel=f"{x.constituent} degree",
        ylabel=f"{y.constituent} degree",
        colors=_line_colors(len(lines), opts),
    )
    return _normalized(layer) if opts.normalize else layer


def _normalized(layer: Layer) -> Layer:
    (x0, x1), (y0, y1) = layer.x_range, layer.y_range
    sx, sy = _span(x0, x1), _span(y0, y1)
    lines = [[((px - x0) / sx, (py - y0) / sy) for px, py in line] for line in layer.lines]
    return replace(layer, lines=lines, x_range=(0, 1), y_range=(0, 1), normalized=True)


class _Frame:
    """Affine map from plot coordinates to pixels (y axis pointing up)."""

    def __init__(self, x_range, y_range, opts: PlotOptions):
        self.x0, x1 = x_range
        self.y0, y1 = y_range
        self.sx = (opts.width - 2 * MARGIN) / _span(self.x0, x1)
        self.sy = (opts.height - 2 * MARGIN) / _span(self.y0, y1)
        self.bottom = opts.height - MARGIN

    def px(self, x: float, y: float) -> tuple[float, float]:
        return MARGIN + (x - self.x0) * self.sx, self.bottom - (y - self.y0) * self.sy

    def transform(self) -> str:
        tx = MARGIN - self.x0 * self.sx
        ty = self.bottom + self.y0 * self.sy
        return f"matrix({_num(round(self.sx, 6))} 0 0 {_num(round(-self.sy, 6))} {_num(round(tx, 6))} {_num(round(ty, 6))})"


def _header(opts: PlotOptions, kind: str) -> list[str]:
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{opts.width}" '
        f'height="{opts.height}" viewBox="0 0 {opts.width} {opts.height}" data-plot={quoteattr(kind)}>',
        f'<rect x="0" y="0" width="{opts.width}" height="{opts.height}" fill="#ffffff"/>',
    ]
    if opts.title:
        out.append(f'<text x="{opts.width // 2}" y="16" text-anchor="middle" font-family="sans-serif" '
                   f'font-size="12" fill="{INK}">{escape(opts.title)}</text>')
    return out


def _axes(frame: _Frame, x_range, y_range, xlabel: str, ylabel: str, opts: PlotOptions) -> list[str]:
    (x0, x1), (y0, y1) = x_range, y_range
    ax, ay = frame.px(x0, y0)
    bx, _ = frame.px(x1, y0)
    _, cy = frame.px(x0, y1)
    font = f'font-family="sans-serif" font-size="10" fill="{INK}"'
    return [
        f'<g class="axes" data-x-range="{_num(x0)} {_num(x1)}" data-y-range="{_num(y0)} {_num(y1)}">',
        f'<line x1="{_num(ax)}" y1="{_num(ay)}" x2="{_num(max(bx, ax + 1))}" y2="{_num(ay)}" stroke="{INK}" stroke-width="1"/>',
        f'<line x1="{_num(ax)}" y1="{_num(ay)}" x2="{_num(ax)}" y2="{_num(min(cy, ay - 1))}" stroke="{INK}" stroke-width="1"/>',
        f'<text x="{_num(ax)}" y="{_num(ay + 14)}" text-anchor="middle" {font}>{_num(x0)}</text>',
        f'<text x="{_num(bx)}" y="{_num(ay + 14)}" text-anchor="middle" {font}>{_num(x1)}</text>',
        f'<text x="{_num(ax - 4)}" y="{_num(ay + 3)}" text-anchor="end" {font}>{_num(y0)}</text>',
        f'<text x="{_num(ax - 4)}" y="{_num(cy + 3)}" text-anchor="end" {font}>{_num(y1)}</text>',
        f'<text x="{opts.width // 2}" y="{opts.height - 8}" text-anchor="middle" {font}>{escape(xlabel)}</text>',
        f'<text x="12" y="{opts.height // 2}" text-anchor="middle" transform="rotate(-90 12 {opts.height // 2})" {font}>{escape(ylabel)}</text>',
        "</g>",
    ]


def _hop_bars(frame: _Frame, layer: Layer, y_range) -> list[str]:
    out = ['<g class="hop-axes">']
    for h in range(1, layer.hop_count + 1):
        x = h
        if layer.normalized:
            x = (h - 1) / _span(1, layer.hop_count)
        px, top = frame.px(x, y_range[1])
        _, bottom = frame.px(x, y_range[0])
        out.append(f'<line x1="{_num(px)}" y1="{_num(top)}" x2="{_num(px)}" y2="{_num(bottom)}" '
                   f'stroke="{AXIS_BAR}" stroke-width="2" data-hop="{h}"/>')
    out.append("</g>")
    return out


def _render(layers: Sequence[Layer], opts: PlotOptions, class_colors: Sequence[str] | None) -> str:
    kind = layers[0].kind
    x_range = (min(l.x_range[0] for l in layers), max(l.x_range[1] for l in layers))
    y_range = (min(l.y_range[0] for l in layers), max(l.y_range[1] for l in layers))
    frame = _Frame(x_range, y_range, opts)
    total = sum(len(l.lines) for l in layers)
    alpha = _num(opts.line_opacity(total))
    out = _header(opts, kind)
    out += _axes(frame, x_range, y_range, layers[0].xlabel, layers[0].ylabel, opts)
    if kind == "hop":
        widest = max(layers, key=lambda l: l.hop_count)
        out += _hop_bars(frame, widest, y_range)
    out.append(f'<g class="lines" transform="{frame.transform()}" fill="none" stroke-opacity="{alpha}" '
               f'stroke-linejoin="round" stroke-linecap="round">')
    markers = []
    for k, layer in enumerate(layers):
        colors = layer.colors or [opts.stroke] * len(layer.lines)
        if class_colors is not None:
            colors = [class_colors[k % len(class_colors)]] * len(layer.lines)
        for i, (line, color) in enumerate(zip(layer.lines, colors)):
            pts = " ".join(f"{_num(x)},{_num(y)}" for x, y in line)
            out.append(f'<polyline points="{pts}" stroke="{color}" stroke-width="1.5" '
                       f'vector-effect="non-scaling-stroke" data-layer="{k}" data-source="{i}"/>')
            if len(line) == 1:
                cx, cy = frame.px(*line[0])
                markers.append(f'<circle cx="{_num(round(cx, 4))}" cy="{_num(round(cy, 4))}" r="3" '
                               f'fill="{color}" fill-opacity="{alpha}" data-source="{i}"/>')
    out.append("</g>")
    if markers:
        out.append('<g class="markers">')
        out += markers
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def hop_census_plot(ci: CensusInstance, opts: PlotOptions = PlotOptions()) -> str:
    """Each vector as a polyline over hop axes sharing one degree range."""
    return _render([hop_census_layer(ci, opts)], opts, None)


def census_census_plot(x: CensusInstance, y: CensusInstance, opts: PlotOptions = PlotOptions()) -> str:
    """Per-source trajectories of ``(x[h], y[h])`` in hop order."""
    return _render([census_census_layer(x, y, opts)], opts, None)


def superimpose(layers: Sequence[Layer], opts: PlotOptions = PlotOptions(),
                class_colors: Sequence[str] = CLASS_COLORS) -> str:
    """Draw several absolute-frame layers in one union frame, one colour per layer."""
    if not layers:
        raise PlotError("nothing to superimpose")
    if any(l.normalized for l in layers) or opts.normalize:
        raise PlotError("superimposed plots need absolute (un-normalized) axes")
    if len({l.kind for l in layers}) != 1:
        raise PlotError("cannot superimpose different plot kinds")
    if len(layers) == 1:
        return _render(layers, opts, None)
    return _render(layers, opts, class_colors)


def heatmap_plot(b: BMatrix, opts: PlotOptions = PlotOptions()) -> str:
    """Hop on the horizontal axis, degree on the vertical; log-scaled ramp colours."""
    hops, width = b.shape
    top = b.max_count
    out = _header(opts, "heatmap")
    if hops == 0:
        out.append("</svg>")
        return "\n".join(out) + "\n"
    if opts.normalize:
        x_range, y_range = (0, 1), (0, 1)
        cw, ch = 1 / hops, 1 / width
    else:
        x_range, y_range = (0, hops), (0, width)
        cw = ch = 1
    frame = _Frame(x_range, y_range, opts)
    xlabel = "hop" if not opts.normalize else "hop (normalized)"
    out += _axes(frame, x_range, y_range, xlabel, "degree", opts)
    out.append('<g class="cells">')
    for i, row in enumerate(b.cells):
        for j, count in enumerate(row):
            if count == 0:
                continue
            if opts.log_color:
                t = math.log1p(count) / math.log1p(top)
            else:
                t = count / top
            x_left, y_top = frame.px(i * cw, (j + 1) * ch)
            x_right, y_bottom = frame.px((i + 1) * cw, j * ch)
            out.append(
                f'<rect x="{_num(round(x_left, 4))}" y="{_num(round(y_top, 4))}" '
                f'width="{_num(round(x_right - x_left, 4))}" height="{_num(round(y_bottom - y_top, 4))}" '
                f'fill="{ramp(t)}" data-hop="{i + 1}" data-degree="{j}" data-count="{count}"/>'
            )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def circular_node_link(g: Graph, opts: PlotOptions = PlotOptions()) -> str:
    """Nodes evenly spaced on a circle in index order, edges as straight segments."""
    n = g.node_count
    cx, cy = opts.width / 2, opts.height / 2
    r = min(opts.width, opts.height) / 2 - MARGIN / 2
    pos = [
        (round(cx + r * math.cos(2 * math.pi * i / n - math.pi / 2), 4),
         round(cy + r * math.sin(2 * math.pi * i / n - math.pi / 2), 4))
        for i in range(n)
    ]
    colors = _line_colors(n, opts) if n else []
    out = _header(opts, "node-link")
    alpha = _num(opts.line_opacity(g.edge_count))
    out.append(f'<g class="edges" stroke="{INK}" stroke-opacity="{alpha}" stroke-width="1">')
    for u, v in g.edges():
        (x1, y1), (x2, y2) = pos[u], pos[v]
        out.append(f'<line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}"/>')
    out.append("</g>")
    out.append('<g class="nodes">')
    for i, (x, y) in enumerate(pos):
        out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="3" fill="{colors[i]}" data-node="{i}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def axis_ranges(layers: Sequence[Layer]) -> dict:
    """Union axis ranges, for side-car JSON alignment across plots."""
    return {
        "x": [min(l.x_range[0] for l in layers), max(l.x_range[1] for l in layers)],
        "y": [min(l.y_range[0] for l in layers), max(l.y_range[1] for l in layers)],
        "normalized": any(l.normalized for l in layers),
    }


def dumps_sidecar(ranges: dict) -> str:
    return json.dumps(ranges, sort_keys=True, indent=2) + "\n"
