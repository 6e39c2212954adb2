"""Patch assembly for the three tiling modes, the local matching-rule
verifiers, and the translation scanner.

A patch is a window of decorated tiles indexed by (tier, center). The three
builders share one skeleton: classify every center in each relevant
triangulation, decorate, and record the chirality letter relating consecutive
tiers. HEXWEAVE_THREADS > 1 parallelises the per-center work; results are
order-preserving, so output is identical either way.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .decor import (
    WELL_ARROW_CHIRALITY,
    HexTile,
    complete_corner_hexagon,
    decorate,
    prototile_type,
    well_arrow_pattern,
)
from .lattice import (
    Vec,
    add,
    coset_index,
    frame,
    neg,
    norm_sq,
    opposite_slot,
    perp,
    points_in_disk,
    rot60,
    rot300,
    smul,
    sub,
)
from .seeds import AdicSeed, build_tower, lift
from .triangulation import Report, Triangulation, Violation


@dataclass(frozen=True)
class Window:
    center: Vec
    radius: float

    def contains(self, x: Vec) -> bool:
        if self.radius < 0:
            return False
        return norm_sq(sub(x, self.center)) <= self.radius * self.radius


@dataclass
class Patch:
    mode: str  # "ts" | "penrose" | "ntier"
    window: Window
    tiles: dict[tuple[int, Vec], HexTile]
    seed: AdicSeed | None = None  # ground seed (base-frame)
    coset: int | None = None  # penrose mode
    coset_choices: tuple[int, ...] | None = None  # ntier mode
    chirality: int = WELL_ARROW_CHIRALITY

    def tier_tiles(self, tier: int) -> dict[Vec, HexTile]:
        return {y: t for (tr, y), t in self.tiles.items() if tr == tier}

    @property
    def tiers(self) -> int:
        return 1 + max((tr for tr, _ in self.tiles), default=0)


def pool_size() -> int:
    try:
        n = int(os.environ.get("HEXWEAVE_THREADS", "1"))
    except ValueError:
        n = 1
    return max(n, 1)


def _map(fn, items: list) -> list:
    n = pool_size()
    if n <= 1 or len(items) < 64:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


def _relative_letter(sign_in: int, axis_in: int, tier_in: int,
                     sign_out: int, axis_out: int) -> str:
    """Chirality bit between a tile's shift and its parent-tier shift.

    Right bisection keeps the two shift lines perpendicular partners, so the
    parent shift is +-perp of the child shift; "L" is the + side.
    """
    s_in = smul(sign_in, perp(frame(tier_in).axis_vec(axis_in)))
    s_out = smul(sign_out, perp(frame(tier_in + 1).axis_vec(axis_out)))
    p = perp(s_in)
    if s_out == p:
        return "L"
    if s_out == neg(p):
        return "R"
    raise AssertionError("consecutive shift axes are not perpendicular partners")


def build_ts(q: AdicSeed, window: Window,
             chirality: int = WELL_ARROW_CHIRALITY) -> Patch:
    """Composite small-hexagon patch: every base-lattice point in the window
    gets its own stripe decoration plus colours inherited verbatim from the
    parent tile of its coset's lifted seed."""
    if q.frame.tier != 0:
        raise ValueError("composite patches start from a base-frame seed")
    tq = Triangulation(q)
    lifted = [lift(q, c) for c in range(3)]
    trs = [Triangulation(r) for r in lifted]
    centers = list(points_in_disk(window.center, window.radius, q.frame, q.base))

    def one(y: Vec) -> HexTile:
        cls, me = tq.placement(y)
        c = coset_index(sub(y, q.base))
        rcls, rme = trs[c].placement(y)
        colors = well_arrow_pattern(rcls.axis, rme.apex_side, chirality)
        tile = decorate(y, 0, cls.level, cls.axis, me.apex_side,
                        colors=colors, chirality=chirality)
        letter = prototile_type(tile)
        # colour-derived letter must equal the tier-relative orientation bit
        assert letter == _relative_letter(me.apex_side, cls.axis, 0,
                                          rme.apex_side, rcls.axis)
        return replace(tile, type_letter=letter)

    tiles = {(0, t.center): t for t in _map(one, centers)}
    return Patch("ts", window, tiles, seed=q, chirality=chirality)


def build_penrose(q: AdicSeed, coset: int, window: Window,
                  chirality: int = WELL_ARROW_CHIRALITY) -> Patch:
    """Double-hexagon patch over one coset: at every lifted-lattice point a
    self-coloured outer tile (lifted seed) stacked on a self-coloured inner
    tile (ground seed)."""
    if q.frame.tier != 0:
        raise ValueError("double-hexagon patches start from a base-frame seed")
    if coset not in (0, 1, 2):
        raise ValueError("coset must be 0, 1 or 2")
    r = lift(q, coset)
    tq, tr = Triangulation(q), Triangulation(r)
    centers = list(points_in_disk(window.center, window.radius, r.frame, r.base))

    def one(y: Vec) -> tuple[HexTile, HexTile]:
        qcls, qme = tq.placement(y)
        rcls, rme = tr.placement(y)
        inner = decorate(y, 0, qcls.level, qcls.axis, qme.apex_side,
                         chirality=chirality)
        letter = _relative_letter(qme.apex_side, qcls.axis, 0,
                                  rme.apex_side, rcls.axis)
        outer = decorate(y, 1, rcls.level, rcls.axis, rme.apex_side,
                         chirality=chirality)
        return inner, replace(outer, type_letter=letter)

    tiles: dict[tuple[int, Vec], HexTile] = {}
    for inner, outer in _map(one, centers):
        tiles[(0, inner.center)] = inner
        tiles[(1, outer.center)] = outer
    return Patch("penrose", window, tiles, seed=q, coset=coset,
                 chirality=chirality)


def build_ntier(q: AdicSeed, coset_choices: tuple[int, ...], window: Window,
                chirality: int = WELL_ARROW_CHIRALITY) -> Patch:
    """Stacked patch over the top lattice of a lifted-seed tower. Tier-t
    entries (t >= 1) carry the orientation letter against tier t-1."""
    tower = build_tower(q, coset_choices)
    top = tower.tiers[-1]
    trs = [Triangulation(s) for s in tower.tiers]
    centers = list(points_in_disk(window.center, window.radius,
                                  top.frame, top.base))

    def one(y: Vec) -> list[tuple[tuple[int, Vec], HexTile]]:
        placements = [t.placement(y) for t in trs]
        out = []
        for t, (cls, me) in enumerate(placements):
            letter = "L"
            if t >= 1:
                pcls, pme = placements[t - 1]
                letter = _relative_letter(pme.apex_side, pcls.axis, t - 1,
                                          me.apex_side, cls.axis)
            tile = decorate(y, t, cls.level, cls.axis, me.apex_side,
                            chirality=chirality)
            out.append(((t, y), replace(tile, type_letter=letter)))
        return out

    tiles: dict[tuple[int, Vec], HexTile] = {}
    for entries in _map(one, centers):
        tiles.update(entries)
    return Patch("ntier", window, tiles, seed=q,
                 coset_choices=tuple(coset_choices), chirality=chirality)


def type_census(patch: Patch) -> dict[str, int]:
    """Count tier>=1 letter words per stacked column of a multi-tier patch."""
    n = patch.tiers
    words: dict[str, int] = {}
    for y in sorted(patch.tier_tiles(n - 1)):
        word = "".join(patch.tiles[(t, y)].type_letter for t in range(1, n))
        words[word] = words.get(word, 0) + 1
    return words


def _unit_triangles(fr, tiles: dict[Vec, HexTile]):
    """(vertices, deltas) of each unit up/down triangle with all tiles present.
    deltas[i] = 3*(centroid - vertex_i), a unit vector one tier up."""
    b1, b2, b3 = fr.b1, fr.b2, fr.b3
    for y in tiles:
        for corners in ((add(y, b1), add(y, b3)), (add(y, b3), add(y, b2))):
            vs = (y, *corners)
            if all(v in tiles for v in vs):
                tot = (vs[0][0] + vs[1][0] + vs[2][0],
                       vs[0][1] + vs[1][1] + vs[2][1])
                yield vs, [sub(tot, smul(3, v)) for v in vs]


def verify_rt1(patch: Patch) -> Report:
    """Local edge rule on the tier-0 tiling: shared-edge arrows agree, stripes
    continue straight across crossed edges, and the chevrons meeting at any
    vertex number 0, 1 or 3, a triple always opening toward the vertex."""
    fr = frame(0)
    w = frame(1)
    tiles = patch.tier_tiles(0)
    violations: list[Violation] = []
    checked = skipped = 0
    for y, tile in tiles.items():
        for slot in (0, 1, 2):
            d = fr.dir_vec(slot)
            other = tiles.get(add(y, d))
            if other is None:
                skipped += 1
                continue
            checked += 1
            if tile.arrows[slot] + other.arrows[slot + 3] != 0:
                violations.append(Violation(y, f"arrow mismatch across +D{slot + 1}"))
            if tile.axis == slot and other.axis == slot:
                checked += 1
                if tile.shift_sign != other.shift_sign:
                    violations.append(Violation(y, f"stripe kink across +D{slot + 1}"))
    for vs, deltas in _unit_triangles(fr, tiles):
        checked += 1
        hits = []
        for v, delta in zip(vs, deltas):
            for pos, opening in tiles[v].marks:
                if w.dir_vec(pos) == delta:
                    hits.append(w.dir_vec(opening) == delta)
        if len(hits) == 2:
            violations.append(Violation(vs[0], "two chevrons at a vertex"))
        elif len(hits) == 3 and not all(hits):
            violations.append(Violation(vs[0], "chevron triple not opening "
                                               "toward its vertex"))
    return Report("rt1", checked, skipped, tuple(violations))


def verify_rt2(patch: Patch) -> Report:
    """Colour rule on the tier-0 tiling: at the two vertices flanking any
    tile edge, the colour arrows of the two non-adjacent tiles pointing at
    that edge disagree."""
    fr = frame(0)
    w = frame(1)
    tiles = patch.tier_tiles(0)
    if any(t.color_keying != "paired" for t in tiles.values()):
        raise ValueError("colour rule needs inherited (paired) colours")
    key_plus = [w.dir_slot(neg(perp(fr.dir_vec(s)))) for s in range(3)]
    key_minus = [w.dir_slot(perp(fr.dir_vec(s))) for s in range(3)]
    violations: list[Violation] = []
    checked = skipped = 0
    for y, tile in tiles.items():
        for slot in (0, 1, 2):
            d = fr.dir_vec(slot)
            t_plus = tiles.get(add(y, rot60(d)))
            t_minus = tiles.get(add(y, rot300(d)))
            if t_plus is None or t_minus is None:
                skipped += 1
                continue
            checked += 1
            if t_plus.colors[key_plus[slot]] + t_minus.colors[key_minus[slot]] != 0:
                violations.append(Violation(y, f"colour clash flanking +D{slot + 1}"))
    return Report("rt2", checked, skipped, tuple(violations))


def _corner_completions(patch: Patch) -> tuple[dict[Vec, tuple[int, ...]],
                                               list[Violation], int, int]:
    """Forced small-hexagon arrows at off-coset points of a double-hexagon
    patch. Each off-coset point touches three on-coset inner tiles across
    alternate edges; their senses must extend to a full stripe pattern."""
    fr = frame(0)
    inner = patch.tier_tiles(0)
    q, c = patch.seed, patch.coset
    completions: dict[Vec, tuple[int, ...]] = {}
    violations: list[Violation] = []
    checked = skipped = 0
    for g in points_in_disk(patch.window.center, patch.window.radius,
                            fr, q.base):
        if coset_index(sub(g, q.base)) == c:
            continue
        triple: dict[int, int] = {}
        for slot in range(6):
            y = add(g, fr.dir_vec(slot))
            if coset_index(sub(y, q.base)) != c:
                continue
            tile = inner.get(y)
            if tile is None:
                triple = {}
                break
            triple[slot] = -tile.arrows[opposite_slot(slot)]
        if len(triple) != 3:
            skipped += 1
            continue
        checked += 1
        full = complete_corner_hexagon(triple)
        if full is None:
            violations.append(Violation(g, "corner senses admit no stripe "
                                           "completion"))
        else:
            completions[g] = full
    return completions, violations, checked, skipped


def verify_legal(patch: Patch) -> Report:
    """Double-hexagon legality: outer arrows agree across shared outer edges,
    every off-coset corner hexagon is uniquely completable, and the completed
    corner hexagons agree with each other edge-to-edge."""
    if patch.mode != "penrose":
        raise ValueError("legality applies to double-hexagon patches")
    fr = frame(0)
    w = frame(1)
    outer = patch.tier_tiles(1)
    violations: list[Violation] = []
    checked = skipped = 0
    for y, tile in outer.items():
        for slot in (0, 1, 2):
            other = outer.get(add(y, w.dir_vec(slot)))
            if other is None:
                skipped += 1
                continue
            checked += 1
            if tile.arrows[slot] + other.arrows[slot + 3] != 0:
                violations.append(Violation(y, f"outer arrow mismatch across "
                                               f"+D{slot + 1}"))
    completions, cviol, cchecked, cskipped = _corner_completions(patch)
    violations.extend(cviol)
    checked += cchecked
    skipped += cskipped
    for g, full in completions.items():
        for slot in (0, 1, 2):
            other = completions.get(add(g, fr.dir_vec(slot)))
            if other is None:
                continue
            checked += 1
            if full[slot] + other[slot + 3] != 0:
                violations.append(Violation(g, f"completed corner hexagons "
                                               f"clash across +D{slot + 1}"))
    return Report("legal", checked, skipped, tuple(violations))


def verify_parity_agreement(q: AdicSeed, coset: int, window: Window,
                            chirality: int = WELL_ARROW_CHIRALITY) -> Report:
    """The chirality letter read off the double-hexagon geometry must equal
    the letter read off the composite tile's colours, point for point."""
    ts = build_ts(q, window, chirality)
    pen = build_penrose(q, coset, window, chirality)
    violations: list[Violation] = []
    checked = skipped = 0
    for y, outer in sorted(pen.tier_tiles(1).items()):
        comp = ts.tiles.get((0, y))
        if comp is None:
            skipped += 1
            continue
        checked += 1
        if outer.type_letter != comp.type_letter:
            violations.append(Violation(y, f"geometry says {outer.type_letter}, "
                                           f"colours say {comp.type_letter}"))
    return Report("parity", checked, skipped, tuple(violations))


def verify_coset_union(q: AdicSeed, window: Window,
                       chirality: int = WELL_ARROW_CHIRALITY) -> Report:
    """The three sibling double-hexagon patches recombine into the composite
    patch: on-coset inner tiles match it field for field, and the forced
    corner completions reproduce its arrows at off-coset points."""
    ts = build_ts(q, window, chirality)
    violations: list[Violation] = []
    checked = skipped = 0
    for coset in (0, 1, 2):
        pen = build_penrose(q, coset, window, chirality)
        for y, inner in sorted(pen.tier_tiles(0).items()):
            comp = ts.tiles[(0, y)]
            checked += 1
            same = (inner.level == comp.level and inner.axis == comp.axis
                    and inner.shift_sign == comp.shift_sign
                    and inner.arrows == comp.arrows
                    and inner.marks == comp.marks)
            if not same:
                violations.append(Violation(y, f"inner tile differs from the "
                                               f"composite one (coset {coset})"))
        completions, cviol, cchecked, cskipped = _corner_completions(pen)
        violations.extend(cviol)
        checked += cchecked
        skipped += cskipped
        for g, full in sorted(completions.items()):
            comp = ts.tiles.get((0, g))
            if comp is None:
                skipped += 1
                continue
            checked += 1
            if full != comp.arrows:
                violations.append(Violation(g, f"forced corner arrows differ "
                                               f"from the composite tile "
                                               f"(coset {coset})"))
    return Report("union", checked, skipped, tuple(violations))


def scan_translations(patch: Patch, max_shift: int) -> Report:
    """Search for nonzero translations up to max_shift preserving every
    decoration field (level excluded) on the inner window. Pass means none."""
    if max_shift < 1:
        raise ValueError("max_shift must be at least 1")
    if patch.window.radius < 2 * max_shift:
        raise ValueError("window radius must be at least twice max_shift")
    tiles = patch.tier_tiles(0)
    center = patch.window.center
    inner2 = (patch.window.radius - max_shift) ** 2

    def dec(t: HexTile):
        return (t.axis, t.shift_sign, t.arrows, t.colors, t.marks)

    inner = sorted(y for y in tiles if norm_sq(sub(y, center)) <= inner2)
    violations: list[Violation] = []
    checked = 0
    for tv in points_in_disk((0, 0), max_shift, frame(0)):
        if tv == (0, 0):
            continue
        checked += 1
        hit = True
        for y in inner:
            other = tiles.get(add(y, tv))
            if other is None or dec(other) != dec(tiles[y]):
                hit = False
                break
        if hit and inner:
            violations.append(Violation(tv, "decoration-preserving translation"))
    return Report("aperiodic", checked, 0, tuple(violations),
                  stats={"inner_points": len(inner)})
