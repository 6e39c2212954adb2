"""Truncated hierarchical coset seeds and the lift/project maps between frames.

A seed over a frame L records, for each level k = 1..depth, a representative
c_k of a coset of 2^k*L, with c_k = c_(k-1) mod 2^(k-1)*L (c_0 is the seed's
base point, the level-0 class mod L itself). Beyond the declared depth a tail
policy takes over: "strict" raises, "prng" draws deterministic increments from
a 64-bit seed, and lifted seeds defer to their parent one frame down.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import InsufficientDepthError, SeedFormatError
from .lattice import (
    Frame,
    Vec,
    ZERO,
    add,
    coset_index,
    frame,
    smul,
    sub,
)

TAIL_STRICT = ("strict",)
# prng tail: ("prng", seed64); lift tail: ("lift", parent_seed, coset)

_MASK64 = (1 << 64) - 1
_PRNG_LEVEL_CAP = 96  # hard stop for runaway level searches


def _splitmix(seed64: int, level: int) -> int:
    z = (seed64 + level * 0x9E3779B97F4A7C15) & _MASK64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return z


@dataclass(frozen=True)
class AdicSeed:
    """Immutable truncated coset tower over one frame.

    offsets[k-1] is the canonical representative of the level-k class:
    frame coordinates of (c_k - base) lie in [0, 2^k)^2.
    """

    frame: Frame
    base: Vec
    offsets: tuple[Vec, ...]
    tail: tuple = TAIL_STRICT
    _reps: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def depth(self) -> int:
        return len(self.offsets)

    @property
    def coset(self) -> int:
        """Level-0 coset index; meaningful for tier-1 frames (0 for tier 0)."""
        return coset_index(self.base) if self.frame.tier >= 1 else 0

    def canonical_rep(self, x: Vec, k: int) -> Vec:
        """Reduce x to the canonical representative of its class mod 2^k*frame."""
        u, v, d = self.frame.to_local(sub(x, self.base))
        if u % d or v % d:
            raise SeedFormatError(
                f"{x} is not congruent to the base {self.base} mod frame {self.frame.name}"
            )
        m = 1 << k
        return add(self.base, self.frame.from_local(((u // d) % m, (v // d) % m)))

    def in_level_coset(self, x: Vec, k: int) -> bool:
        """True iff x = c_k mod 2^k*frame (k = 0 tests frame membership of x - base)."""
        u, v, d = self.frame.to_local(sub(x, self.rep(k)))
        m = d << k
        return u % m == 0 and v % m == 0

    def rep(self, k: int) -> Vec:
        """Representative c_k, extending past the declared depth per the tail policy."""
        if k <= self.depth:
            return self.base if k == 0 else self.offsets[k - 1]
        cached = self._reps.get(k)
        if cached is not None:
            return cached
        mode = self.tail[0]
        if mode == "strict":
            raise InsufficientDepthError(k)
        if k > _PRNG_LEVEL_CAP:
            raise InsufficientDepthError(k, f"level search exceeded cap at {k}")
        prev = self.rep(k - 1)
        if mode == "prng":
            bits = _splitmix(self.tail[1], k)
            eps = (bits & 1, (bits >> 1) & 1)
            out = add(prev, self.frame.from_local((eps[0] << (k - 1), eps[1] << (k - 1))))
        elif mode == "lift":
            parent: AdicSeed = self.tail[1]
            out = _solve_lift_level(parent, self, k, prev)
        else:  # pragma: no cover
            raise SeedFormatError(f"unknown tail mode {mode!r}")
        self._reps[k] = out
        return out

    def validate(self) -> "SeedCheck":
        """Check canonical form and the increment condition, reporting the first fault."""
        fr = self.frame
        if fr.reduce(self.base) != self.base:
            return SeedCheck(False, 0, self.base, "base is not reduced mod frame")
        prev = self.base
        for k, c in enumerate(self.offsets, start=1):
            u, v, d = fr.to_local(sub(c, self.base))
            if u % d or v % d:
                return SeedCheck(False, k, c, "offset not congruent to base mod frame")
            m = 1 << k
            if not (0 <= u // d < m and 0 <= v // d < m):
                return SeedCheck(False, k, c, "offset not in canonical range")
            du, dv, d2 = fr.to_local(sub(c, prev))
            step = d2 << (k - 1)
            if du % step or dv % step:
                return SeedCheck(False, k, sub(c, prev), "increment not in 2^(k-1)*frame")
            prev = c
        return SeedCheck(True, None, None, "ok")


@dataclass(frozen=True)
class SeedCheck:
    ok: bool
    level: int | None
    offending: Vec | None
    reason: str


def make_seed(fr: Frame, base: Vec, offsets, tail: tuple = TAIL_STRICT) -> AdicSeed:
    """Normalize raw data into a canonical seed; raises SeedFormatError on real faults."""
    base = fr.reduce(base)
    seed = AdicSeed(fr, base, (), tail)
    canon = []
    prev = base
    for k, c in enumerate(offsets, start=1):
        c = seed.canonical_rep(tuple(c), k)
        du, dv, d = fr.to_local(sub(c, prev))
        step = d << (k - 1)
        if du % step or dv % step:
            raise SeedFormatError(f"increment at level {k} not in 2^{k - 1}*{fr.name}")
        canon.append(c)
        prev = c
    return AdicSeed(fr, base, tuple(canon), tail)


def zero_seed(fr: Frame, depth: int, tail: tuple = TAIL_STRICT, base: Vec = ZERO) -> AdicSeed:
    base = fr.reduce(base)
    return AdicSeed(fr, base, (base,) * depth, tail)


def random_seed(rng: random.Random, fr: Frame, depth: int, tail: tuple = TAIL_STRICT,
                base: Vec = ZERO) -> AdicSeed:
    """Uniform draw: independent 2-bit increments per level."""
    base = fr.reduce(base)
    offs = []
    prev = base
    for k in range(1, depth + 1):
        eps = (rng.getrandbits(1) << (k - 1), rng.getrandbits(1) << (k - 1))
        prev = add(prev, fr.from_local(eps))
        offs.append(prev)
    return make_seed(fr, base, offs, tail)


def step_coset_index(fr: Frame, x: Vec, origin: Vec = ZERO) -> int:
    """Coset of x - origin among the three classes of (next tier) inside fr."""
    u, v = fr.local(sub(x, origin))
    return (u + v) % 3


def _solve_lift_level(q: AdicSeed, r: AdicSeed, k: int, prev: Vec) -> Vec:
    """Unique c_k for the lift r of q: congruent to prev mod 2^(k-1)*G and to q's
    level-k class mod 2^k*F. Existence/uniqueness ride on the chain identities."""
    g = r.frame
    f = q.frame
    target = q.rep(k)
    hits = []
    for s in (0, 1):
        for t in (0, 1):
            cand = add(prev, g.from_local((s << (k - 1), t << (k - 1))))
            u, v, d = f.to_local(sub(cand, target))
            m = d << k
            if u % m == 0 and v % m == 0:
                hits.append(cand)
    if len(hits) != 1:  # pragma: no cover - forbidden by the intersection identities
        raise SeedFormatError(f"lift level {k} admits {len(hits)} solutions")
    return r.canonical_rep(hits[0], k)


def lift(q: AdicSeed, c: int) -> AdicSeed:
    """The unique next-tier seed over coset c projecting to q level-by-level."""
    if c not in (0, 1, 2):
        raise SeedFormatError("coset must be 0, 1 or 2")
    check = q.validate()
    if not check.ok:
        raise SeedFormatError(f"invalid seed: {check.reason} at level {check.level}")
    g = frame(q.frame.tier + 1)
    base = g.reduce(add(q.base, smul(c, q.frame.b1)))
    r = AdicSeed(g, base, (), ("lift", q, c))
    offs = []
    prev = base
    for k in range(1, q.depth + 1):
        prev = _solve_lift_level(q, r, k, prev)
        offs.append(prev)
    return AdicSeed(g, base, tuple(offs), ("lift", q, c))


def project(r: AdicSeed) -> AdicSeed:
    """Reduce each representative one frame down; inverse of lift."""
    if r.frame.tier == 0:
        raise SeedFormatError("tier-0 seeds have no projection")
    f = frame(r.frame.tier - 1)
    base = f.reduce(r.base)
    down = AdicSeed(f, base, (), r.tail)
    offs = tuple(down.canonical_rep(c, k) for k, c in enumerate(r.offsets, start=1))
    tail = r.tail
    if tail[0] == "lift":
        parent: AdicSeed = tail[1]
        if parent.frame == f and parent.base == base and parent.offsets == offs:
            return parent
        tail = TAIL_STRICT  # a lift tail is only meaningful one frame up
    return AdicSeed(f, base, offs, tail)


@dataclass(frozen=True)
class SeedTower:
    """Compatible seeds over consecutive tiers 0..n-1."""

    tiers: tuple[AdicSeed, ...]

    @property
    def n(self) -> int:
        return len(self.tiers)

    def compatible(self) -> bool:
        for t in range(1, self.n):
            hi, lo = self.tiers[t], self.tiers[t - 1]
            if hi.frame.tier != lo.frame.tier + 1 or hi.depth != lo.depth:
                return False
            if lo.frame.reduce(hi.base) != lo.base:
                return False
            for k in range(1, min(hi.depth, lo.depth) + 1):
                if not lo.in_level_coset(hi.rep(k), k):
                    return False
        return True


def build_tower(q: AdicSeed, coset_choices) -> SeedTower:
    """Iterate lift tier-by-tier; one coset choice per additional tier."""
    tiers = [q]
    for c in coset_choices:
        tiers.append(lift(tiers[-1], c))
    return SeedTower(tuple(tiers))


def singularity_prefix_check(seed: AdicSeed) -> dict[str, int]:
    """Heuristic line-consistency scores per axis.

    For each axis the transverse coordinate of the offsets is tracked mod 2^j;
    the score is the largest k <= depth whose recent window of minimal-absolute
    residues is constant, i.e. the prefix is consistent with the seed lying on
    a 2-adic line along the axis. A finite prefix can only flag, never certify.
    """
    fr = seed.frame
    transverse = {
        "D1": lambda uv: uv[1],
        "D2": lambda uv: uv[0],
        "D3": lambda uv: uv[1] - uv[0],
    }
    scores: dict[str, int] = {}
    for name, coord in transverse.items():
        hats = []
        for j in range(1, seed.depth + 1):
            uv = fr.local(sub(seed.rep(j), seed.base))
            nu = coord(uv) % (1 << j)
            if nu > (1 << (j - 1)):
                nu -= 1 << j
            hats.append(nu)
        score = 0
        for k in range(1, seed.depth + 1):
            lo = max(1, k // 2)
            window = hats[lo - 1 : k]
            if all(h == window[0] for h in window):
                score = k
        scores[name] = score
    return scores
