"""Deliberately defective reference data for the verifiers.

The generators here are *not* seed-driven. The periodic patch repeats its
decoration on a sublattice, so the translation scanner must flag it; the
misaligned triangle set nests correctly in size and edge pairing but breaks
the central-child condition. Both exist to prove the checks can fail.
"""

from __future__ import annotations

from dataclasses import replace

from .decor import HexTile, decorate, well_arrow_pattern
from .lattice import (
    Vec,
    add,
    frame,
    points_in_disk,
    rot60,
    rot300,
    smul,
    sub,
)
from .assembly import Patch, Window
from .triangulation import DELTA_AXIS, TriangleRef


def _mod(x: Vec, m: int) -> Vec:
    return (x[0] % m, x[1] % m)


def periodic_tile_patch(radius: float, center: Vec = (0, 0)) -> Patch:
    """Small-hexagon patch whose decoration depends only on the point mod 4.

    Points off the doubled lattice play level 0 with the usual stripe rule;
    the remaining choices are frozen arbitrarily. Every field repeats with
    period 4 in both lattice coordinates."""
    fr = frame(0)
    tiles: dict[tuple[int, Vec], HexTile] = {}
    for y in points_in_disk(center, radius, fr):
        r2 = _mod(y, 2)
        if r2 != (0, 0):
            axis = DELTA_AXIS[r2]
            a = fr.axis_vec(axis)
            base = sub(y, a)
            t_up = add(base, rot60(smul(2, a)))
            t_dn = add(base, rot300(smul(2, a)))
            if _mod(t_up, 4) == (0, 0):
                sign = 1
            elif _mod(t_dn, 4) == (0, 0):
                sign = -1
            else:
                sign = 1
            level = 0
        elif _mod(y, 4) != (0, 0):
            axis = DELTA_AXIS[_mod((y[0] // 2, y[1] // 2), 2)]
            sign = 1
            level = 1
        else:
            axis, sign, level = 0, 1, 2
        tile = decorate(y, 0, level, axis, sign,
                        colors=well_arrow_pattern(axis, sign))
        tiles[(0, y)] = tile
    return Patch("ts", Window(center, radius), tiles)


def misaligned_triangle_set(radius: float, center: Vec = (0, 0)
                            ) -> list[TriangleRef]:
    """Three triangle levels whose first two nest but whose third sits on an
    off-grid translate, so no level-2 triangle contains its central child."""
    fr = frame(0)
    out: list[TriangleRef] = []
    slack = 2.0 * fr.length()
    bases = {0: (0, 0), 1: (0, 0), 2: (1, 0)}
    for lev in range(3):
        s = 1 << lev
        for p in points_in_disk(center, radius + slack * s, fr, bases[lev], lev):
            for up in (True, False):
                out.append(TriangleRef(lev, p, up, False))
    out.sort(key=lambda t: (t.level, t.base_vertex[0], t.base_vertex[1], not t.up))
    return out


def flip_arrow(patch: Patch, key: tuple[int, Vec], slot: int) -> Patch:
    tiles = dict(patch.tiles)
    tile = tiles[key]
    arrows = list(tile.arrows)
    arrows[slot] = -arrows[slot]
    tiles[key] = replace(tile, arrows=tuple(arrows))
    return replace(patch, tiles=tiles)


def flip_color(patch: Patch, key: tuple[int, Vec], slot: int) -> Patch:
    tiles = dict(patch.tiles)
    tile = tiles[key]
    colors = list(tile.colors)
    colors[slot] = -colors[slot]
    tiles[key] = replace(tile, colors=tuple(colors))
    return replace(patch, tiles=tiles)


def swap_tile(patch: Patch, key: tuple[int, Vec], tile: HexTile) -> Patch:
    tiles = dict(patch.tiles)
    tiles[key] = tile
    return replace(patch, tiles=tiles)
