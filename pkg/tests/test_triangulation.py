"""Triangulation: point levels, stripe edges, maximal edges, verifiers.

The maximal-edge solver is cross-checked against an oracle that knows nothing
about stripe growth: enumerate every triangle in a window, index each edge's
interior lattice points, and take the deepest edge through the query point.
The flanking apexes come from the same enumeration.
"""

import random

import pytest

from hexweave import lattice as L
from hexweave.errors import InsufficientDepthError
from hexweave.fixtures import misaligned_triangle_set
from hexweave.seeds import lift, make_seed, random_seed, zero_seed
from hexweave.triangulation import (
    TriangleRef,
    Triangulation,
    central_child_of,
    enumerate_triangles,
    maximal_edge,
    need_depth,
    verify_nesting,
    verify_right_bisection,
)

Q = L.frame(0)


# ----------------------------------------------------------- frozen cases

def test_classify_worked_examples():
    t = Triangulation(make_seed(Q, (0, 0), [(1, 0), (3, 0)]))
    c = t.classify((1, 0))
    assert (c.level, c.axis, c.endpoints) == (1, 0, ((-1, 0), (3, 0)))
    c = t.classify((0, 1))
    assert (c.level, c.axis, c.endpoints) == (0, 2, ((-1, 0), (1, 2)))


def test_classify_on_upper_frame():
    g = L.frame(1)
    t = Triangulation(zero_seed(g, 4))
    c = t.classify(g.b1)
    assert (c.level, c.axis) == (0, 0)
    assert c.endpoints == ((0, 0), (4, 2))


def test_level_of_rejects_point_off_the_coset():
    t = Triangulation(zero_seed(L.frame(1), 3))
    with pytest.raises(ValueError):
        t.level_of((1, 0))


def test_strict_tail_exhaustion_reports_level():
    t = Triangulation(zero_seed(Q, 5))
    with pytest.raises(InsufficientDepthError) as ei:
        t.level_of((0, 0))
    assert ei.value.level == 6


def test_maximal_edge_grows_through_collinear_midpoint():
    seed = make_seed(Q, (0, 0), [(1, 0), (1, 2), (5, 2)])
    me = maximal_edge((1, 1), seed)
    assert (me.level, me.endpoints, me.axis, me.apex_side) == \
        (2, ((1, -2), (1, 2)), 1, -1)


def test_maximal_edge_stops_at_axis_break():
    seed = make_seed(Q, (0, 0), [(1, 0), (1, 0), (1, 0)])
    me = maximal_edge((0, 1), seed)
    assert (me.level, me.endpoints, me.axis, me.apex_side) == \
        (1, ((-1, 0), (1, 2)), 2, -1)


def test_singular_line_edge_growth_and_strict_exhaustion():
    # reps marching along one axis: (-1, 0) stays congruent at every level,
    # so the edge through the origin grows until the declared data runs out
    offsets = [((1 << k) - 1, 0) for k in range(1, 9)]
    with pytest.raises(InsufficientDepthError):
        Triangulation(make_seed(Q, (0, 0), offsets)).maximal_edge((0, 0))
    tailed = make_seed(Q, (0, 0), offsets, ("prng", 40))
    me = Triangulation(tailed).maximal_edge((0, 0))
    assert me.axis == 0 and me.level >= 8
    # the declared-depth segment sits inside whatever the tail allowed
    assert me.endpoints[0][1] == 0
    assert me.endpoints[0][0] <= -1 and me.endpoints[1][0] >= 255


def test_need_depth_grows_with_radius():
    assert need_depth(2) == 7
    assert need_depth(64) > need_depth(8) >= 9


# ------------------------------------------------- independent edge oracle

R_ENUM = 48.0
R_INNER = 10.0
MAX_LEV = 6


def _edge_index(seed, triangles):
    """Map each interior lattice point to its containing triangle edges, and
    each (level, edge) pair to the flanking third vertices."""
    fr = seed.frame
    through: dict[L.Vec, list] = {}
    flanks: dict[tuple, list] = {}
    seen = set()
    for t in triangles:
        vs = t.vertices(fr)
        for i in range(3):
            v, w = vs[i], vs[(i + 1) % 3]
            key = (t.level, min(v, w), max(v, w))
            flanks.setdefault(key, []).append(vs[(i + 2) % 3])
            if key in seen:
                continue
            seen.add(key)
            s = 1 << t.level
            step = ((w[0] - v[0]) // s, (w[1] - v[1]) // s)
            for j in range(1, s):
                pt = (v[0] + j * step[0], v[1] + j * step[1])
                through.setdefault(pt, []).append(key)
    return through, flanks


def _oracle_seeds():
    """First four draws whose edges near the origin stay at level <= 4.

    Near-singular draws carry edges far longer than any feasible enumeration
    window (one master-stream draw reaches level 9), so they are skipped here
    and exercised separately. The oracle re-derives every claimed edge for the
    seeds that remain, so the selection cannot mask a wrong answer on them."""
    rng = random.Random(20260815)
    out = []
    attempts = 0
    while len(out) < 4:
        attempts += 1
        assert attempts < 40, "master stream yields no tame seeds"
        s = random_seed(rng, Q, need_depth(R_ENUM))
        tri = Triangulation(s)
        try:
            if all(tri.placement(x)[1].level <= 5
                   for x in L.points_in_disk((0, 0), R_INNER, Q)):
                out.append(s)
        except InsufficientDepthError:
            continue
    return out


@pytest.mark.parametrize("seed", _oracle_seeds(), ids=lambda s: str(s.offsets[:2]))
def test_maximal_edge_matches_triangle_oracle(seed):
    tri = Triangulation(seed)
    triangles = enumerate_triangles(seed, (0, 0), R_ENUM, MAX_LEV)
    through, flanks = _edge_index(seed, triangles)
    for x in L.points_in_disk((0, 0), R_INNER, Q):
        me = tri.maximal_edge(x)
        # selection bound; levels <= 5 stay fully inside the enumeration
        assert me.level <= 5, (x, me)
        hits = through.get(x)
        assert hits, f"no enumerated edge passes through {x}"
        deepest = max(hits, key=lambda k: k[0])
        assert deepest[0] == me.level, (x, me, hits)
        assert (deepest[1], deepest[2]) == (min(me.endpoints), max(me.endpoints))
        # exactly one flanking apex is deep, and the sign names it
        third = flanks[deepest]
        assert len(third) == 2
        side = L.sub(me.endpoints[1], me.endpoints[0])
        t_up = L.add(me.endpoints[0], L.rot60(side))
        t_dn = L.add(me.endpoints[0], L.rot300(side))
        assert sorted(third) == sorted((t_up, t_dn))
        deep = [p for p in third if seed.in_level_coset(p, me.level + 1)]
        assert len(deep) == 1
        assert me.apex_side == (1 if deep[0] == t_up else -1)


def test_interior_points_share_the_maximal_edge():
    rng = random.Random(31)
    for _ in range(6):
        seed = random_seed(rng, Q, need_depth(16))
        tri = Triangulation(seed)
        for x in L.points_in_disk((0, 0), 6.0, Q):
            me = tri.maximal_edge(x)
            a = Q.axis_vec(me.axis)
            e0, e1 = me.endpoints
            n = 1 << me.level
            for j in range(1, n):
                p = L.add(e0, L.smul(j, a))
                # level follows the dyadic valuation of the position
                val = (j & -j).bit_length() - 1
                assert tri.level_of(p) == val
                assert tri.classify(p).axis == me.axis
                # a fresh classifier, with no shared cache, agrees
                assert Triangulation(seed).maximal_edge(p) == me
            for u in (e0, e1):
                lev = tri.level_of(u)
                assert lev >= me.level
                assert lev > me.level or tri.stripe_axis(u, lev) != me.axis


# ----------------------------------------------------- triangle enumeration

def test_enumeration_is_deterministic_and_labels_children():
    rng = random.Random(5)
    seed = random_seed(rng, Q, need_depth(16))
    a = enumerate_triangles(seed, (0, 0), 16.0, 3)
    assert a == enumerate_triangles(seed, (0, 0), 16.0, 3)
    present = {(t.level, t.base_vertex, t.up): t for t in a}
    inner = [t for t in a if t.level >= 1 and
             all(L.norm_sq(v) <= 10 * 10 for v in t.vertices(Q))]
    assert inner
    for t in inner:
        # four children: one central, three corner copies at half scale
        s = 1 << (t.level - 1)
        mid = central_child_of(t, Q)
        assert present[(mid.level, mid.base_vertex, mid.up)].central
        shifts = ((0, 0), L.smul(s, Q.b1), L.smul(s, Q.b3)) if t.up else \
                 ((0, 0), L.smul(s, Q.b3), L.smul(s, Q.b2))
        for d in shifts:
            corner = present[(t.level - 1, L.add(t.base_vertex, d), t.up)]
            assert not corner.central


def test_central_child_of_level_zero_raises():
    with pytest.raises(ValueError):
        central_child_of(TriangleRef(0, (0, 0), True, False), Q)


# ----------------------------------------------------------------- verifiers

def test_nesting_passes_on_seed_built_sets():
    rng = random.Random(88)
    for _ in range(5):
        seed = random_seed(rng, Q, need_depth(20))
        tris = enumerate_triangles(seed, (0, 0), 20.0, 4)
        rep = verify_nesting(tris, Q, (0, 0), 20.0, 6.0)
        assert rep.ok, rep.violations[:3]
        assert rep.checked > 0


def test_nesting_flags_misaligned_fixture():
    tris = misaligned_triangle_set(16.0)
    rep = verify_nesting(tris, Q, (0, 0), 16.0, 6.0)
    assert not rep.ok
    assert all("central child" in v.detail for v in rep.violations)


def test_bisection_passes_for_lifted_seeds_both_parities():
    rng = random.Random(17)
    q = random_seed(rng, Q, need_depth(12))
    for c in range(3):
        r = lift(q, c)
        rep = verify_right_bisection(q, r, (0, 0), 12.0)
        assert rep.ok and rep.checked > 100
        r2 = lift(r, 1)
        rep2 = verify_right_bisection(r, r2, (0, 0), 12.0)
        assert rep2.ok and rep2.checked > 30


def test_bisection_fails_for_unrelated_seeds():
    rng = random.Random(18)
    q = random_seed(rng, Q, need_depth(12))
    other = random_seed(rng, Q, need_depth(12))
    assert other.offsets != q.offsets
    rep = verify_right_bisection(q, lift(other, 0), (0, 0), 12.0)
    assert not rep.ok


def test_bisection_rejects_same_tier():
    q = zero_seed(Q, 6)
    with pytest.raises(ValueError):
        verify_right_bisection(q, q, (0, 0), 4.0)


# -------------------------------------------------------------- need_depth

def test_need_depth_covers_strict_windows():
    rng = random.Random(41)
    for radius in (3.0, 8.0, 16.0):
        seed = random_seed(rng, Q, need_depth(radius))  # strict tail
        tri = Triangulation(seed)
        for x in L.points_in_disk((0, 0), radius, Q):
            tri.placement(x)  # must not exhaust the declared depth
