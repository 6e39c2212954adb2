"""Decorated hexagon tiles: edge arrows, stripe, corner marks, colours.

Arrow senses are +1 (counterclockwise along the tile boundary) or -1
(clockwise). Two abutting tiles carry the same geometric arrow on their shared
edge exactly when their senses differ. Edge slots follow lattice slot order
[+D1, +D2, +D3, -D1, -D2, -D3] in the tile's own frame; colour and mark
directions are keyed the same way one tier up (the hexagon's vertex
directions).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .lattice import (
    CCW_SLOTS,
    NEXT_AXIS,
    PREV_AXIS,
    ROT60_SLOT,
    Frame,
    Vec,
    frame,
    mirror,
    perp,
    rot60,
    smul,
)

CCW = 1
CW = -1

# The two arrow patterns compatible with the local rules are not related by
# rotation or reflection; edge matching alone accepts both, the colour rule
# (rt2) only this one. See the build-time pinning tests before changing.
WELL_ARROW_CHIRALITY = 1

# alternate-edge slot triples, in angular order
TRIPLE_A = (0, 1, 5)
TRIPLE_B = (2, 3, 4)


def well_arrow_pattern(axis: int, shift_sign: int, chirality: int = WELL_ARROW_CHIRALITY
                       ) -> tuple[int, ...]:
    """Senses of the six edges for a stripe along `axis` displaced toward
    `shift_sign * perp(axis vector)`.

    The two stripe-crossed edges carry the same geometric arrow (pointing
    along the shift); one remaining opposite pair is uniformly cw, the other
    uniformly ccw, picked by the chirality constant.
    """
    if axis not in (0, 1, 2) or shift_sign not in (1, -1) or chirality not in (1, -1):
        raise ValueError("axis in {0,1,2}, shift_sign and chirality in {+1,-1}")
    s = [0] * 6
    s[axis] = shift_sign
    s[axis + 3] = -shift_sign
    cw_axis, ccw_axis = NEXT_AXIS[axis], PREV_AXIS[axis]
    if chirality < 0:
        cw_axis, ccw_axis = ccw_axis, cw_axis
    s[cw_axis] = s[cw_axis + 3] = CW
    s[ccw_axis] = s[ccw_axis + 3] = CCW
    return tuple(s)


WELL_ARROWED = frozenset(
    well_arrow_pattern(axis, sign) for axis in (0, 1, 2) for sign in (1, -1)
)


def is_well_arrowed(arrows: tuple[int, ...]) -> bool:
    return tuple(arrows) in WELL_ARROWED


def arrow_stripe_axis(arrows: tuple[int, ...]) -> tuple[int, int]:
    """(axis, shift_sign) of a well-arrowed sense tuple."""
    for axis in (0, 1, 2):
        for sign in (1, -1):
            if well_arrow_pattern(axis, sign) == tuple(arrows):
                return axis, sign
    raise ValueError("not a well-arrowed tuple")


def complete_corner_hexagon(partial: dict[int, int]) -> tuple[int, ...] | None:
    """Unique well-arrowed completion of three alternate-edge senses, if any."""
    slots = tuple(sorted(partial))
    if slots not in (TRIPLE_A, TRIPLE_B):
        raise ValueError("senses must be given on one alternate-edge triple")
    rest = TRIPLE_B if slots == TRIPLE_A else TRIPLE_A
    hits = []
    for bits in range(8):
        arrows = [0] * 6
        for slot, sense in partial.items():
            arrows[slot] = sense
        for i, slot in enumerate(rest):
            arrows[slot] = CCW if (bits >> i) & 1 else CW
        if is_well_arrowed(tuple(arrows)):
            hits.append(tuple(arrows))
    if len(hits) > 1:  # pragma: no cover - pigeonhole: one pattern per mixed triple
        raise AssertionError("completion is not unique")
    return hits[0] if hits else None


@dataclass(frozen=True)
class HexTile:
    """One decorated hexagon.

    colors are senses of the colour-carrying arrows: +1 red, -1 blue. For
    composite (colour-inherited) tiles they are keyed by the vertex directions
    (paired-frame slots); for self-coloured tiles by the tile's own edge slots.
    marks are two (position, opening) pairs of paired-frame slots.
    """

    center: Vec
    tier: int
    level: int
    axis: int
    shift_sign: int
    arrows: tuple[int, ...]
    colors: tuple[int, ...]
    color_keying: str  # "paired" | "self"
    marks: tuple[tuple[int, int], tuple[int, int]]
    type_letter: str = "L"  # chirality class; meaningful where a parent tier exists

    def shift_vec(self) -> Vec:
        return smul(self.shift_sign, perp(frame(self.tier).axis_vec(self.axis)))

    def rot_index(self) -> int:
        """Rotation class 0..5: angular index of the shift direction."""
        w = frame(self.tier + 1)
        slot = w.dir_slot(self.shift_vec())
        return CCW_SLOTS.index(slot)


def decorate(center: Vec, tier: int, level: int, axis: int, shift_sign: int,
             colors: tuple[int, ...] | None = None,
             chirality: int = WELL_ARROW_CHIRALITY) -> HexTile:
    """Standard decoration from classification data.

    Without inherited colours the tile colours itself from its own arrows
    (red toward ccw edges). Marks sit at the two vertices on the shift axis
    and open outward, toward the flanking parent apex on their side.
    """
    arrows = well_arrow_pattern(axis, shift_sign, chirality)
    w = frame(tier + 1)
    pos_plus = w.dir_slot(perp(frame(tier).axis_vec(axis)))
    pos_minus = (pos_plus + 3) % 6
    marks = tuple(sorted(((pos_plus, pos_plus), (pos_minus, pos_minus))))
    if colors is None:
        return HexTile(center, tier, level, axis, shift_sign, arrows,
                       arrows, "self", marks)
    return HexTile(center, tier, level, axis, shift_sign, arrows,
                   tuple(colors), "paired", marks)


def prototile_type(tile: HexTile) -> str:
    """Chirality letter of a colour-inherited tile.

    Exactly one opposite colour pair is mixed and it lies on the shift axis;
    the tile is "L" when the red end points along the shift, "R" otherwise.
    """
    if tile.color_keying != "paired":
        raise ValueError("prototile type needs inherited (paired) colours")
    mixed = [j for j in range(3) if tile.colors[j] == -tile.colors[j + 3]]
    if len(mixed) != 1:
        raise ValueError(f"expected one mixed colour pair, found {len(mixed)}")
    j = mixed[0]
    w = frame(tile.tier + 1)
    s = tile.shift_vec()
    slot = w.dir_slot(s)
    if slot % 3 != j:
        raise ValueError("mixed colour pair is not on the shift axis")
    red_slot = j if tile.colors[j] == CCW else j + 3
    return "L" if red_slot == slot else "R"


def classify_prototile(tile: HexTile) -> tuple[str, int]:
    """(chirality letter, rotation index 0..5)."""
    return prototile_type(tile), tile.rot_index()


def rotate_tile(tile: HexTile) -> HexTile:
    """Rotate the whole decoration by 60 degrees about its center."""
    fr = frame(tile.tier)
    arrows = [0] * 6
    colors = [0] * 6
    for i in range(6):
        arrows[ROT60_SLOT[i]] = tile.arrows[i]
        colors[ROT60_SLOT[i]] = tile.colors[i]
    axis = NEXT_AXIS[tile.axis]
    new_shift = rot60(tile.shift_vec())
    sign = 1 if new_shift == perp(fr.axis_vec(axis)) else -1
    marks = tuple(sorted((ROT60_SLOT[p], ROT60_SLOT[o]) for p, o in tile.marks))
    return replace(tile, axis=axis, shift_sign=sign, arrows=tuple(arrows),
                   colors=tuple(colors), marks=marks)


def mirror_tile(tile: HexTile) -> HexTile:
    """Reflect the decoration across the tile's D1 axis line."""
    fr = frame(tile.tier)
    w = frame(tile.tier + 1)
    a_perm = [fr.dir_slot(mirror(fr.dir_vec(i))) for i in range(6)]
    w_perm = [w.dir_slot(mirror(w.dir_vec(i))) for i in range(6)]
    arrows = [0] * 6
    colors = [0] * 6
    for i in range(6):
        arrows[a_perm[i]] = -tile.arrows[i]
        key_perm = w_perm if tile.color_keying == "paired" else a_perm
        colors[key_perm[i]] = -tile.colors[i]
    mirrored_axis_vec = mirror(fr.axis_vec(tile.axis))
    slot = fr.dir_slot(mirrored_axis_vec)
    axis = slot % 3
    new_shift = mirror(tile.shift_vec())
    sign = 1 if new_shift == perp(fr.axis_vec(axis)) else -1
    marks = tuple(sorted((w_perm[p], w_perm[o]) for p, o in tile.marks))
    letter = "R" if tile.type_letter == "L" else "L"
    return replace(tile, axis=axis, shift_sign=sign, arrows=tuple(arrows),
                   colors=tuple(colors), marks=marks, type_letter=letter)
