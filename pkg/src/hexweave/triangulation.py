"""Nested triangulation induced by a seed: point levels, stripe edges,
maximal edges, triangle enumeration and the structural verifiers."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateSeedError
from .lattice import (
    Frame,
    Vec,
    add,
    norm_sq,
    perpendicular_axis,
    points_in_disk,
    rot60,
    rot300,
    smul,
    sub,
)
from .seeds import AdicSeed

DELTA_AXIS = {(1, 0): 0, (0, 1): 1, (1, 1): 2}

# longest edge whose interior points get pre-seeded into the memo
_EDGE_MEMO_CAP = 10


@dataclass(frozen=True)
class PointClass:
    """Level and stripe data of one lattice point."""

    point: Vec
    level: int
    axis: int  # 0,1,2 <-> D1,D2,D3 of the seed's frame
    endpoints: tuple[Vec, Vec]  # the level-(k+1) edge this point bisects


@dataclass(frozen=True)
class MaxEdge:
    level: int
    endpoints: tuple[Vec, Vec]  # ordered: endpoints[0] = midpoint - 2^(m-1)*axis
    axis: int
    apex_side: int  # +1 if the flanking parent apex lies along +perp(axis vector)


@dataclass(frozen=True)
class TriangleRef:
    level: int
    base_vertex: Vec
    up: bool  # UP(p,s) = {p, p+s*b1, p+s*(b1+b2)}; DOWN(p,s) = {p, p+s*(b1+b2), p+s*b2}
    central: bool  # central child of its parent (else corner child)

    def vertices(self, fr: Frame) -> tuple[Vec, Vec, Vec]:
        s = 1 << self.level
        p = self.base_vertex
        if self.up:
            return (p, add(p, smul(s, fr.b1)), add(p, smul(s, fr.b3)))
        return (p, add(p, smul(s, fr.b3)), add(p, smul(s, fr.b2)))


class Triangulation:
    """Seed-bound classifier with per-point memoization."""

    def __init__(self, seed: AdicSeed):
        self.seed = seed
        self.frame = seed.frame
        self._levels: dict[Vec, int] = {}
        self._classes: dict[Vec, PointClass] = {}
        self._edges: dict[Vec, MaxEdge] = {}

    def level_of(self, x: Vec) -> int:
        """Largest k with x in the level-k coset. Raises on strict-tail exhaustion."""
        hit = self._levels.get(x)
        if hit is not None:
            return hit
        if not self.seed.in_level_coset(x, 0):
            raise ValueError(f"{x} is not in the seed's lattice coset")
        k = 0
        while self.seed.in_level_coset(x, k + 1):
            k += 1
        self._levels[x] = k
        return k

    def stripe_axis(self, x: Vec, k: int) -> int:
        d = sub(x, self.seed.rep(k + 1))
        u, v = self.frame.local(d)
        delta = ((u >> k) & 1, (v >> k) & 1)
        axis = DELTA_AXIS.get(delta)
        if axis is None:  # pragma: no cover - excluded by level_of
            raise DegenerateSeedError(f"zero delta at {x}")
        return axis

    def classify(self, x: Vec) -> PointClass:
        hit = self._classes.get(x)
        if hit is not None:
            return hit
        k = self.level_of(x)
        axis = self.stripe_axis(x, k)
        a = self.frame.axis_vec(axis)
        e = (sub(x, smul(1 << k, a)), add(x, smul(1 << k, a)))
        out = PointClass(x, k, axis, e)
        self._classes[x] = out
        return out

    def placement(self, x: Vec) -> tuple[PointClass, MaxEdge]:
        """Classification plus the maximal edge carrying the point's stripe.
        The edge's apex side fixes the tile shift one tier up."""
        cls = self.classify(x)
        me = self.maximal_edge(x, cls.level, cls.axis, cls.endpoints)
        return cls, me

    def maximal_edge(self, x: Vec, k: int | None = None, axis: int | None = None,
                     e: tuple[Vec, Vec] | None = None) -> MaxEdge:
        hit = self._edges.get(x)
        if hit is not None:
            return hit
        if k is None:
            k = self.level_of(x)
            axis = self.stripe_axis(x, k)
        if e is None:
            a = self.frame.axis_vec(axis)
            e = (sub(x, smul(1 << k, a)), add(x, smul(1 << k, a)))
        a = self.frame.axis_vec(axis)
        m = k + 1
        while True:
            grow = []
            for u in e:
                if self.level_of(u) == m and self.stripe_axis(u, m) == axis:
                    grow.append(u)
            if not grow:
                break
            if len(grow) == 2:
                raise DegenerateSeedError(
                    f"edge through {x} extends at both endpoints at level {m}"
                )
            mid = grow[0]
            m += 1
            step = smul(1 << (m - 1), a)
            e = (sub(mid, step), add(mid, step))
        side = smul(1 << m, a)
        t_up = add(e[0], rot60(side))
        t_dn = add(e[0], rot300(side))
        up_hi = self.seed.in_level_coset(t_up, m + 1)
        dn_hi = self.seed.in_level_coset(t_dn, m + 1)
        if up_hi == dn_hi:
            raise DegenerateSeedError(
                f"maximal edge through {x}: {int(up_hi) + int(dn_hi)} apexes qualify"
            )
        out = MaxEdge(m, e, axis, 1 if up_hi else -1)
        self._edges[x] = out
        # interior points share the maximal edge; endpoints belong to other
        # lines. Seeding them all is a win only while the edge is short: a
        # near-singular line can reach level 20+, and walking 2^m points for
        # the handful that fall inside a window would dominate the build.
        if m <= _EDGE_MEMO_CAP:
            p = add(e[0], a)
            while p != e[1]:
                self._edges.setdefault(p, out)
                p = add(p, a)
        return out

    def level_histogram(self, center: Vec, radius: float) -> dict[int, int]:
        hist: dict[int, int] = {}
        for p in points_in_disk(center, radius, self.frame, self.seed.base):
            k = self.level_of(p)
            hist[k] = hist.get(k, 0) + 1
        return hist


def level_of(x: Vec, seed: AdicSeed) -> int:
    return Triangulation(seed).level_of(x)


def classify(x: Vec, seed: AdicSeed) -> PointClass:
    return Triangulation(seed).classify(x)


def maximal_edge(x: Vec, seed: AdicSeed) -> MaxEdge:
    return Triangulation(seed).maximal_edge(x)


def need_depth(radius: float) -> int:
    """Declared depth comfortably covering all levels met in a radius-R window."""
    k = 3
    while (1 << k) < 4 * max(radius, 2.0):
        k += 1
    return k + 4


def enumerate_triangles(seed: AdicSeed, center: Vec, radius: float,
                        max_level: int) -> list[TriangleRef]:
    """All triangles of level <= max_level with a vertex inside the window,
    labelled central/corner relative to their parent. Deterministic order."""
    fr = seed.frame
    out: list[TriangleRef] = []
    slack = 2.0 * fr.length()
    for lev in range(max_level + 1):
        s = 1 << lev
        b1s, b2s, b3s = smul(s, fr.b1), smul(s, fr.b2), smul(s, fr.b3)
        r2 = radius * radius
        for p in points_in_disk(center, radius + slack * s, fr, seed.rep(lev), lev):
            for up in (True, False):
                vs = (p, add(p, b1s), add(p, b3s)) if up else (p, add(p, b3s), add(p, b2s))
                if not any(norm_sq(sub(v, center)) <= r2 for v in vs):
                    continue
                hi = sum(1 for v in vs if seed.in_level_coset(v, lev + 1))
                if hi not in (0, 1):
                    raise DegenerateSeedError(
                        f"triangle at {p} level {lev} has {hi} deep vertices"
                    )
                out.append(TriangleRef(lev, p, up, hi == 0))
    out.sort(key=lambda t: (t.level, t.base_vertex[0], t.base_vertex[1], not t.up))
    return out


def central_child_of(t: TriangleRef, fr: Frame) -> TriangleRef:
    """The medial (central) child one level down."""
    if t.level < 1:
        raise ValueError("level-0 triangles have no child")
    s = 1 << (t.level - 1)
    if t.up:
        return TriangleRef(t.level - 1, add(t.base_vertex, smul(s, fr.b1)), False, True)
    return TriangleRef(t.level - 1, add(t.base_vertex, smul(s, fr.b2)), True, True)


@dataclass(frozen=True)
class Violation:
    at: Vec
    detail: str


@dataclass(frozen=True)
class Report:
    rule: str
    checked: int
    skipped_boundary: int
    violations: tuple[Violation, ...]
    stats: dict = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "pass": self.ok,
            "checked": self.checked,
            "skipped_boundary": self.skipped_boundary,
            "violations": [{"at": list(v.at), "detail": v.detail} for v in self.violations],
        }


def verify_nesting(triangles: list[TriangleRef], fr: Frame, center: Vec,
                   radius: float, margin: float) -> Report:
    """Structural checks on an enumerated triangle set:
    (i) interior edges border an equal-size triangle on each side,
    (ii) side lengths are powers of two in frame units,
    (iii) every deep-enough triangle contains its central child."""
    inner2 = max(radius - margin, 0.0) ** 2
    present = {(t.level, t.base_vertex, t.up) for t in triangles}
    edge_count: dict[tuple, int] = {}
    unit2 = norm_sq(fr.b1)
    violations = []
    checked = 0
    skipped = 0
    for t in triangles:
        vs = t.vertices(fr)
        side2 = (1 << (2 * t.level)) * unit2
        for i in range(3):
            v, w = vs[i], vs[(i + 1) % 3]
            checked += 1
            if norm_sq(sub(w, v)) != side2:
                violations.append(Violation(v, f"side of level-{t.level} triangle "
                                               f"is not 2^{t.level} frame units"))
            key = (t.level, min(v, w), max(v, w))
            edge_count[key] = edge_count.get(key, 0) + 1
    for (lev, v, w), n in sorted(edge_count.items()):
        if norm_sq(sub(v, center)) <= inner2 and norm_sq(sub(w, center)) <= inner2:
            checked += 1
            if n != 2:
                violations.append(Violation(v, f"interior level-{lev} edge to {w} "
                                               f"borders {n} triangle(s), wanted 2"))
        else:
            skipped += 1
    for t in triangles:
        if t.level < 1:
            continue
        vs = t.vertices(fr)
        if not all(norm_sq(sub(v, center)) <= inner2 for v in vs):
            skipped += 1
            continue
        checked += 1
        child = central_child_of(t, fr)
        if (child.level, child.base_vertex, child.up) not in present:
            violations.append(Violation(t.base_vertex,
                                        f"level-{t.level} triangle lacks its central child"))
    return Report("nesting", checked, skipped, tuple(violations))


def verify_right_bisection(q: AdicSeed, r: AdicSeed, center: Vec, radius: float) -> Report:
    """Each stripe edge of the upper triangulation is right-bisected by the
    lower one at the same point, and vice versa: equal levels, perpendicular
    axes, and half-edges of matching scale on both sides."""
    if r.frame.tier != q.frame.tier + 1:
        raise ValueError("second seed must live one tier up")
    tq = Triangulation(q)
    tr = Triangulation(r)
    violations = []
    checked = 0
    for y in points_in_disk(center, radius, r.frame, r.base):
        checked += 1
        cr = tr.classify(y)
        cq = tq.classify(y)
        if cq.level != cr.level:
            violations.append(Violation(y, f"levels differ: lower {cq.level}, "
                                           f"upper {cr.level}"))
            continue
        if perpendicular_axis(cq.axis, q.frame.tier) != cr.axis:
            violations.append(Violation(y, "edge axes are not perpendicular partners"))
            continue
        k = cq.level
        aq = q.frame.axis_vec(cq.axis)
        if cq.endpoints != (sub(y, smul(1 << k, aq)), add(y, smul(1 << k, aq))):
            violations.append(Violation(y, "lower edge is not centred on the point"))
        ar = r.frame.axis_vec(cr.axis)
        if cr.endpoints != (sub(y, smul(1 << k, ar)), add(y, smul(1 << k, ar))):
            violations.append(Violation(y, "upper edge is not centred on the point"))
    return Report("bisect", checked, 0, tuple(violations))
