"""Deterministic SVG rendering of patches.

Pure string assembly: fixed 4-decimal coordinates, tiles drawn in the JSON
sort order, one group per layer. Rendering constants (stripe offset, chevron
size) are display choices only and carry no structural meaning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .assembly import Patch
from .decor import HexTile
from .lattice import cart, frame, perp

# fractions of the hexagon inradius
_STRIPE_OFF = 1 / 6
_CHEVRON = 1 / 4
_ARROW = 1 / 3

_DEFAULT_PALETTE = {
    "outline": "#444444",
    "stripe": "#111111",
    "arrow": "#666666",
    "mark": "#111111",
    "red": "#cc2222",
    "blue": "#2244cc",
}


@dataclass(frozen=True)
class RenderSpec:
    scale: float = 36.0
    layers: tuple[str, ...] = ("tiles", "stripes", "arrows", "marks", "colors")
    palette: dict = field(default_factory=lambda: dict(_DEFAULT_PALETTE))
    margin: float = 1.5


def _fmt(v: float) -> str:
    s = f"{v + 0.0:.4f}"  # +0.0 normalizes -0.0
    return "0.0000" if s == "-0.0000" else s


def _pt(spec: RenderSpec, p: tuple[float, float]) -> tuple[float, float]:
    # y grows upward in lattice space, downward in SVG
    return (p[0] * spec.scale, -p[1] * spec.scale)


def _poly(points, stroke, width, fill="none", close=True) -> str:
    d = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    tag = "polygon" if close else "polyline"
    return (f'<{tag} points="{d}" fill="{fill}" stroke="{stroke}" '
            f'stroke-width="{_fmt(width)}"/>')


def _line(a, b, stroke, width) -> str:
    return (f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" '
            f'y2="{_fmt(b[1])}" stroke="{stroke}" stroke-width="{_fmt(width)}"/>')


def _unit(v: tuple[float, float]) -> tuple[float, float]:
    n = math.hypot(*v)
    return (v[0] / n, v[1] / n)


class _TileGeom:
    """Cartesian scaffolding of one tile, in SVG coordinates."""

    def __init__(self, tile: HexTile, spec: RenderSpec):
        fr = frame(tile.tier)
        w = frame(tile.tier + 1)
        c = cart(tile.center)
        self.center = _pt(spec, c)
        self.verts = [_pt(spec, tuple(ci + vi / 3 for ci, vi in
                                      zip(c, cart(w.dir_vec(j)))))
                      for j in range(6)]
        self.edge_mid = [_pt(spec, tuple(ci + di / 2 for ci, di in
                                         zip(c, cart(fr.dir_vec(j)))))
                         for j in range(6)]
        self.edge_tan = [_unit(_pt(spec, cart(perp(fr.dir_vec(j)))))
                         for j in range(6)]
        self.w_dir = [_unit(_pt(spec, cart(w.dir_vec(j)))) for j in range(6)]
        self.a_dir = [_unit(_pt(spec, cart(fr.dir_vec(j)))) for j in range(6)]
        self.inradius = math.sqrt(3) ** tile.tier * spec.scale / 2


def _render_tile(tile: HexTile, spec: RenderSpec, layers: dict) -> None:
    g = _TileGeom(tile, spec)
    pal = spec.palette
    lw = max(0.6, spec.scale / 36.0) * (1.0 + 0.5 * tile.tier)
    if "tiles" in layers:
        order = [0, 2, 1, 3, 5, 4]  # angular vertex order
        layers["tiles"].append(_poly([g.verts[j] for j in order],
                                     pal["outline"], lw))
    if "stripes" in layers:
        shift = _unit(_pt(spec, cart(tile.shift_vec())))
        o = (shift[0] * g.inradius * _STRIPE_OFF,
             shift[1] * g.inradius * _STRIPE_OFF)
        a = g.edge_mid[tile.axis]
        b = g.edge_mid[tile.axis + 3]
        layers["stripes"].append(_line((a[0] + o[0], a[1] + o[1]),
                                       (b[0] + o[0], b[1] + o[1]),
                                       pal["stripe"], lw * 1.4))
    if "arrows" in layers:
        r = g.inradius * _ARROW
        for slot in range(6):
            m = g.edge_mid[slot]
            t = g.edge_tan[slot]
            s = tile.arrows[slot]
            tip = (m[0] + s * t[0] * r, m[1] + s * t[1] * r)
            tail = (m[0] - s * t[0] * r, m[1] - s * t[1] * r)
            layers["arrows"].append(_line(tail, tip, pal["arrow"], lw * 0.8))
            # arrowhead: two short barbs off the tip
            back = (-s * t[0], -s * t[1])
            for rot in (0.5, -0.5):
                cs, sn = math.cos(rot), math.sin(rot)
                bx = back[0] * cs - back[1] * sn
                by = back[0] * sn + back[1] * cs
                layers["arrows"].append(_line(tip, (tip[0] + bx * r * 0.5,
                                                    tip[1] + by * r * 0.5),
                                              pal["arrow"], lw * 0.8))
    if "marks" in layers:
        r = g.inradius * _CHEVRON
        for pos, opening in tile.marks:
            v = g.verts[pos]
            od = g.w_dir[opening]
            for rot in (2.2, -2.2):
                cs, sn = math.cos(rot), math.sin(rot)
                ax = od[0] * cs - od[1] * sn
                ay = od[0] * sn + od[1] * cs
                layers["marks"].append(_line(v, (v[0] + ax * r, v[1] + ay * r),
                                             pal["mark"], lw))
    if "colors" in layers:
        dirs = g.w_dir if tile.color_keying == "paired" else g.a_dir
        reach = (1 / 3 if tile.color_keying == "paired" else 1 / 2) * 0.7
        edge = math.sqrt(3) ** tile.tier * spec.scale
        for slot in range(6):
            d = dirs[slot]
            color = pal["red"] if tile.colors[slot] > 0 else pal["blue"]
            end = (g.center[0] + d[0] * edge * reach,
                   g.center[1] + d[1] * edge * reach)
            layers["colors"].append(_line(g.center, end, color, lw * 0.9))


def render_svg(patch: Patch, spec: RenderSpec | None = None) -> str:
    spec = spec or RenderSpec()
    layers: dict[str, list[str]] = {name: [] for name in spec.layers}
    tiles = sorted(patch.tiles.values(),
                   key=lambda t: (t.tier, t.level, t.center[0], t.center[1]))
    for tile in tiles:
        _render_tile(tile, spec, layers)
    c = _pt(spec, cart(patch.window.center))
    r = (patch.window.radius + spec.margin) * spec.scale
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt(c[0] - r)} {_fmt(c[1] - r)} {_fmt(2 * r)} {_fmt(2 * r)}">',
        f'<rect x="{_fmt(c[0] - r)}" y="{_fmt(c[1] - r)}" width="{_fmt(2 * r)}" '
        f'height="{_fmt(2 * r)}" fill="#ffffff"/>',
    ]
    for name in spec.layers:
        parts.append(f'<g id="{name}">')
        parts.extend(layers[name])
        parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
