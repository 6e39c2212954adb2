"""Builders, matching-rule verifiers, and the translation scanner.

Positive cases are genuinely seed-built patches. Negative cases are single
targeted corruptions, each tripping exactly the rule it aims at, plus the
deliberately periodic fixture for the scanner and a wrong-chirality build,
which must fail both local rules in bulk.
"""

import random
from dataclasses import replace

import pytest

from hexweave import lattice as L
from hexweave.assembly import (
    Patch,
    Window,
    _corner_completions,
    _unit_triangles,
    build_ntier,
    build_penrose,
    build_ts,
    scan_translations,
    type_census,
    verify_coset_union,
    verify_legal,
    verify_parity_agreement,
    verify_rt1,
    verify_rt2,
)
from hexweave.fixtures import flip_arrow, flip_color, periodic_tile_patch, swap_tile
from hexweave.decor import rotate_tile
from hexweave.seeds import random_seed, zero_seed
from hexweave.triangulation import need_depth

Q = L.frame(0)
W = L.frame(1)


def _seed(tag: int, depth: int = 11):
    rng = random.Random(tag)
    return random_seed(rng, Q, depth, tail=("prng", tag))


@pytest.fixture(scope="module")
def ts_patch():
    return build_ts(_seed(2108), Window((0, 0), 14.0))


@pytest.fixture(scope="module")
def pen_patch():
    return build_penrose(_seed(2108), 1, Window((0, 0), 14.0))


# ------------------------------------------------------------- pass suite

def test_ts_patch_passes_both_local_rules(ts_patch):
    r1 = verify_rt1(ts_patch)
    assert r1.ok and r1.checked > 1000
    r2 = verify_rt2(ts_patch)
    assert r2.ok and r2.checked > 1000


def test_penrose_patch_is_legal_every_coset():
    q = _seed(2108)
    for coset in (0, 1, 2):
        rep = verify_legal(build_penrose(q, coset, Window((0, 0), 14.0)))
        assert rep.ok and rep.checked > 200


def test_parity_agreement_on_genuine_build():
    rep = verify_parity_agreement(_seed(31), 2, Window((0, 0), 12.0))
    assert rep.ok and rep.checked > 100


def test_coset_union_recomposes_the_composite():
    rep = verify_coset_union(_seed(77), Window((0, 0), 10.0))
    assert rep.ok and rep.checked > 300


def test_scan_finds_no_translation_on_genuine(ts_patch):
    rep = scan_translations(ts_patch, 6)
    assert rep.ok
    assert rep.stats["inner_points"] > 100
    assert rep.checked > 30


def test_builds_are_reproducible():
    a = build_ts(_seed(5), Window((0, 0), 8.0))
    b = build_ts(_seed(5), Window((0, 0), 8.0))
    assert a.tiles == b.tiles


def test_threaded_build_is_identical(monkeypatch, ts_patch):
    monkeypatch.setenv("HEXWEAVE_THREADS", "4")
    threaded = build_ts(_seed(2108), Window((0, 0), 14.0))
    assert threaded.tiles == ts_patch.tiles


# ------------------------------------------------------- chirality pinning

def test_wrong_chirality_fails_both_rules_in_bulk():
    patch = build_ts(_seed(2108), Window((0, 0), 14.0), chirality=-1)
    r1 = verify_rt1(patch)
    r2 = verify_rt2(patch)
    # mixed junctions pin the crossed senses, so a global flip cannot hide
    assert len(r1.violations) > r1.checked // 10
    assert len(r2.violations) > r2.checked // 10


# ------------------------------------------------------------- corruptions

def test_rotated_tile_breaks_edge_matching(ts_patch):
    key = (0, (1, 1))
    broken = swap_tile(ts_patch, key, rotate_tile(ts_patch.tiles[key]))
    rep = verify_rt1(broken)
    assert not rep.ok
    assert any("arrow mismatch" in v.detail for v in rep.violations)


def test_flipped_arrow_breaks_edge_matching(ts_patch):
    rep = verify_rt1(flip_arrow(ts_patch, (0, (1, 1)), 0))
    assert not rep.ok


def test_flipped_color_breaks_color_rule(ts_patch):
    rep = verify_rt2(flip_color(ts_patch, (0, (1, 1)), 2))
    assert not rep.ok
    assert any("colour clash" in v.detail for v in rep.violations)
    assert verify_rt1(flip_color(ts_patch, (0, (1, 1)), 2)).ok  # rt1 blind to it


def _triple_member(patch):
    """Center of a tile whose chevron completes a count-three vertex.

    Counts of 0 and 1 tolerate a single moved chevron, so corruptions must
    start from a triple to be visible to the counting rule."""
    tiles = patch.tier_tiles(0)
    for vs, deltas in _unit_triangles(Q, tiles):
        hits = [v for v, delta in zip(vs, deltas)
                for pos, _ in tiles[v].marks if W.dir_vec(pos) == delta]
        if len(hits) == 3:
            return hits[0]
    raise AssertionError("no chevron triple inside the window")


def test_moved_marks_break_chevron_counts(ts_patch):
    target = _triple_member(ts_patch)
    tile = ts_patch.tiles[(0, target)]
    moved = tuple(sorted(((p + 1) % 6, (o + 1) % 6) for p, o in tile.marks))
    rep = verify_rt1(swap_tile(ts_patch, (0, target), replace(tile, marks=moved)))
    assert not rep.ok
    assert any("chevron" in v.detail for v in rep.violations)


def test_inward_chevron_triple_is_flagged(ts_patch):
    target = _triple_member(ts_patch)
    tile = ts_patch.tiles[(0, target)]
    flipped = tuple((p, (o + 3) % 6) for p, o in tile.marks)
    rep = verify_rt1(swap_tile(ts_patch, (0, target), replace(tile, marks=flipped)))
    assert any("not opening" in v.detail or "two chevrons" in v.detail
               for v in rep.violations)


def test_flipped_outer_arrow_breaks_legality(pen_patch):
    y = next(y for y in sorted(pen_patch.tier_tiles(1))
             if all((1, L.add(y, W.dir_vec(s))) in pen_patch.tiles
                    for s in range(6)))
    rep = verify_legal(flip_arrow(pen_patch, (1, y), 1))
    assert not rep.ok
    assert any("outer arrow mismatch" in v.detail for v in rep.violations)


def test_uniform_corner_triple_breaks_legality(pen_patch):
    completions, viols, checked, _ = _corner_completions(pen_patch)
    assert not viols and checked > 100
    fr = Q
    base = pen_patch.seed.base
    inner = pen_patch.tier_tiles(0)
    g = sorted(completions)[0]
    triple = {}
    for slot in range(6):
        y = L.add(g, fr.dir_vec(slot))
        if L.coset_index(L.sub(y, base)) == pen_patch.coset and y in inner:
            triple[slot] = (y, -inner[y].arrows[L.opposite_slot(slot)])
    assert len(triple) == 3
    senses = [s for _, s in triple.values()]
    minority = next(slot for slot, (_, s) in triple.items()
                    if senses.count(s) == 1)
    y_min, _ = triple[minority]
    rep = verify_legal(flip_arrow(pen_patch, (0, y_min),
                                  L.opposite_slot(minority)))
    assert any("no stripe completion" in v.detail for v in rep.violations)


def test_scanner_flags_the_periodic_fixture():
    rep = scan_translations(periodic_tile_patch(20.0), 6)
    assert not rep.ok
    hits = {v.at for v in rep.violations}
    assert {(4, 0), (0, 4)} <= hits


# ----------------------------------------------------------- stacked mode

def test_ntier_census_covers_all_words():
    patch = build_ntier(_seed(9), (0, 2), Window((0, 0), 24.0))
    assert patch.tiers == 3
    census = type_census(patch)
    assert set(census) == {"LL", "LR", "RL", "RR"}
    assert sum(census.values()) == len(patch.tier_tiles(2))
    # every column is fully stacked
    for y in patch.tier_tiles(2):
        assert (0, y) in patch.tiles and (1, y) in patch.tiles


def test_single_tier_census_is_trivial():
    patch = build_ntier(_seed(9), (), Window((0, 0), 10.0))
    assert patch.tiers == 1
    assert type_census(patch) == {"": len(patch.tier_tiles(0))}


# ------------------------------------------------------------- interfaces

def test_window_boundary_is_closed():
    assert Window((0, 0), 2.0).contains((2, 0))
    assert not Window((0, 0), 2.0).contains((3, 0))


def test_builders_validate_inputs():
    with pytest.raises(ValueError):
        build_ts(zero_seed(W, 4), Window((0, 0), 4.0))
    with pytest.raises(ValueError):
        build_penrose(zero_seed(Q, 8, tail=("prng", 1)), 5, Window((0, 0), 4.0))


def test_verifiers_validate_modes(ts_patch, pen_patch):
    with pytest.raises(ValueError):
        verify_legal(ts_patch)
    with pytest.raises(ValueError):
        verify_rt2(pen_patch)  # inner tiles colour themselves


def test_scanner_validates_inputs(ts_patch):
    with pytest.raises(ValueError):
        scan_translations(ts_patch, 0)
    with pytest.raises(ValueError):
        scan_translations(ts_patch, 9)
