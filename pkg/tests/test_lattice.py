"""Lattice layer: exact maps, frames, slot tables, window enumeration.

Derived values are checked against independent float/enumeration oracles
before anything downstream trusts them.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hexweave import lattice as L

vecs = st.tuples(st.integers(-40, 40), st.integers(-40, 40))


def _cart_rot(p, degrees):
    t = math.radians(degrees)
    return (p[0] * math.cos(t) - p[1] * math.sin(t),
            p[0] * math.sin(t) + p[1] * math.cos(t))


def _close(a, b, tol=1e-9):
    return abs(a[0] - b[0]) < tol and abs(a[1] - b[1]) < tol


# ---------------------------------------------------------------- exact maps

@given(vecs)
def test_rot60_matches_cartesian_rotation(v):
    assert _close(L.cart(L.rot60(v)), _cart_rot(L.cart(v), 60))


@given(vecs)
def test_rot300_matches_cartesian_rotation(v):
    assert _close(L.cart(L.rot300(v)), _cart_rot(L.cart(v), -60))


@given(vecs)
def test_perp_is_sqrt3_times_rot90(v):
    cx, cy = _cart_rot(L.cart(v), 90)
    r3 = math.sqrt(3)
    assert _close(L.cart(L.perp(v)), (cx * r3, cy * r3))


@given(vecs)
def test_perp_inverse_roundtrip(v):
    assert L.perp_inv(L.perp(v)) == v


@given(vecs)
def test_norm_sq_is_squared_cartesian_length(v):
    cx, cy = L.cart(v)
    assert abs(L.norm_sq(v) - (cx * cx + cy * cy)) < 1e-9


@given(vecs)
def test_mirror_is_cartesian_x_axis_reflection_and_involutive(v):
    cx, cy = L.cart(v)
    assert _close(L.cart(L.mirror(v)), (cx, -cy))
    assert L.mirror(L.mirror(v)) == v


def test_rotation_worked_examples():
    assert L.rot60((1, 0)) == (1, 1)
    assert L.rot60((0, 1)) == (-1, 0)
    assert L.rot300((1, 1)) == (1, 0)


def test_coset_index_worked_examples():
    assert L.coset_index((2, 1)) == 0
    assert L.coset_index((0, 0)) == 0
    assert L.coset_index((1, 0)) == 1


# ------------------------------------------------------------------- frames

def test_frame_chain_names_and_determinants():
    names = [L.frame(t).name for t in range(6)]
    assert names == ["Q", "3P", "3Q", "9P", "9Q", "27P"]
    for t in range(6):
        assert L.frame(t).det == 3 ** t


def test_frame_basis_relations():
    for t in range(5):
        fr = L.frame(t)
        assert fr.b2 == L.rot60(L.rot60(fr.b1))
        assert fr.b3 == L.rot60(fr.b1) == L.add(fr.b1, fr.b2)
        assert L.frame(t + 2).b1 == L.smul(3, fr.b1)
        # perp maps each frame onto the next one up
        up = L.frame(t + 1)
        assert up.contains(L.perp(fr.b1)) and up.contains(L.perp(fr.b2))


def test_second_frame_membership_matches_coset_oracle():
    # the second frame is exactly the coset-0 sublattice: enumerate both ways
    g = L.frame(1)
    gen = {L.add(L.smul(i, g.b1), L.smul(j, g.b2))
           for i in range(-8, 9) for j in range(-8, 9)}
    window = [(a, b) for a in range(-6, 7) for b in range(-6, 7)]
    by_membership = {p for p in window if g.contains(p)}
    by_coset = {p for p in window if L.coset_index(p) == 0}
    by_generators = {p for p in window if p in gen}
    assert by_membership == by_coset == by_generators


@given(vecs, st.integers(0, 4))
def test_local_from_local_roundtrip(v, tier):
    fr = L.frame(tier)
    if fr.contains(v):
        assert fr.from_local(fr.local(v)) == v


@given(vecs, st.integers(0, 4))
def test_reduce_is_canonical(v, tier):
    fr = L.frame(tier)
    r = fr.reduce(v)
    # difference in the frame, representative with local coords in [0, 1)
    assert fr.contains(L.sub(v, r))
    u, vv, d = fr.to_local(r)
    assert 0 <= u < d and 0 <= vv < d


def test_in_scaled_frame_worked_examples():
    assert L.in_scaled_frame((4, 8), L.frame(0), 2)
    assert not L.in_scaled_frame((2, 0), L.frame(0), 2)
    assert L.in_scaled_frame((4, 2), L.frame(1), 1)


# -------------------------------------------------------------- slot tables

def test_slots_cover_six_unit_directions():
    for t in range(3):
        fr = L.frame(t)
        seen = set()
        for s in range(6):
            d = fr.dir_vec(s)
            assert L.norm_sq(d) == L.norm_sq(fr.b1)
            assert fr.dir_slot(d) == s
            seen.add(d)
        assert len(seen) == 6
        for s in range(6):
            assert fr.dir_vec(L.opposite_slot(s)) == L.neg(fr.dir_vec(s))


def test_ccw_slots_is_the_angular_order():
    fr = L.frame(0)
    angles = [math.atan2(*reversed(L.cart(fr.dir_vec(s)))) for s in L.CCW_SLOTS]
    shifted = [(a - angles[0]) % (2 * math.pi) for a in angles]
    assert shifted == sorted(shifted)
    assert len(set(L.CCW_SLOTS)) == 6


def test_rot60_slot_table_matches_geometry():
    for t in range(3):
        fr = L.frame(t)
        for s in range(6):
            assert fr.dir_vec(L.ROT60_SLOT[s]) == L.rot60(fr.dir_vec(s))


def test_axis_neighbour_tables_match_geometry():
    fr = L.frame(0)
    for a in range(3):
        rot = L.rot60(fr.axis_vec(a))
        assert fr.dir_slot(rot) % 3 == L.NEXT_AXIS[a]
        assert L.PREV_AXIS[L.NEXT_AXIS[a]] == a


def test_perpendicular_axis_table_matches_geometry():
    # the table alternates with tier parity: axis angles differ by 30 degrees
    for t in range(4):
        fr, up = L.frame(t), L.frame(t + 1)
        for a in range(3):
            slot = up.dir_slot(L.perp(fr.axis_vec(a)))
            assert slot % 3 == L.perpendicular_axis(a, t)


# ------------------------------------------------- intersection identities

def _axis_points(window, fr, scale):
    return {p for p in window if L.in_scaled_frame(p, fr, scale)}


@pytest.mark.parametrize("k,l,half", [(1, 1, 24), (1, 2, 24), (2, 1, 48), (2, 2, 48)])
def test_intersection_identities_direct_oracle(k, l, half):
    window = [(a, b) for a in range(-half, half + 1) for b in range(-half, half + 1)]
    odd, even_lo, even_hi = L.frame(2 * k - 1), L.frame(2 * k - 2), L.frame(2 * k)
    lhs1 = _axis_points(window, odd, l - 1) & _axis_points(window, even_lo, l)
    rhs1 = _axis_points(window, odd, l)
    assert lhs1 == rhs1
    lhs2 = _axis_points(window, odd, l) & _axis_points(window, even_hi, l - 1)
    rhs2 = _axis_points(window, even_hi, l)
    assert lhs2 == rhs2


@pytest.mark.parametrize("k,l", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_intersection_identity_checker_passes(k, l):
    assert L.verify_intersection_identities(k, l, 24)


def test_intersection_identity_checker_rejects_bad_args():
    with pytest.raises(ValueError):
        L.verify_intersection_identities(0, 1, 8)
    with pytest.raises(ValueError):
        L.verify_intersection_identities(1, 0, 8)


# ------------------------------------------------------------------ windows

def test_points_in_disk_matches_brute_force():
    got = list(L.points_in_disk((1, -2), 7.5, L.frame(0)))
    brute = [(a, b) for a in range(-20, 21) for b in range(-20, 21)
             if L.norm_sq(L.sub((a, b), (1, -2))) <= 7.5 * 7.5]
    assert set(got) == set(brute)
    assert len(got) == len(brute)
    assert got == sorted(got)  # deterministic enumeration order


def test_points_in_disk_scaled_coset():
    base = (1, 0)
    got = set(L.points_in_disk((0, 0), 9, L.frame(0), base, 2))
    for p in got:
        d = L.sub(p, base)
        assert d[0] % 4 == 0 and d[1] % 4 == 0
    assert (1, 0) in got and (5, 0) in got


def test_points_in_disk_boundary_is_closed():
    got = set(L.points_in_disk((0, 0), 2, L.frame(0)))
    assert (2, 1) in got  # norm_sq exactly 3 < 4; includes interior ring
    assert (2, 0) in got  # norm_sq exactly 4 == radius^2
    assert (3, 0) not in got
