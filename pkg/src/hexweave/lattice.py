"""Exact integer arithmetic for the triangular lattice and its sublattice chain.

Points are integer pairs (alpha, beta) in a fixed 120-degree basis of the
ambient lattice: a1 = (1, 0), a2 = (-1/2, sqrt(3)/2) in Cartesian terms.
Every frame of the chain (tiers 0, 1, 2, ... with index 3 between steps)
carries its own basis expressed in these global coordinates, so all frame
arithmetic stays in exact integers; sqrt(3) factors only appear when
rendering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

Vec = tuple[int, int]

ZERO: Vec = (0, 0)


def add(x: Vec, y: Vec) -> Vec:
    return (x[0] + y[0], x[1] + y[1])


def sub(x: Vec, y: Vec) -> Vec:
    return (x[0] - y[0], x[1] - y[1])


def neg(x: Vec) -> Vec:
    return (-x[0], -x[1])


def smul(c: int, x: Vec) -> Vec:
    return (c * x[0], c * x[1])


def rot60(x: Vec) -> Vec:
    """Rotate 60 degrees counterclockwise: multiplication by a sixth root of unity."""
    return (x[0] - x[1], x[0])


def rot300(x: Vec) -> Vec:
    # inverse of rot60
    return (x[1], x[1] - x[0])


def rot180(x: Vec) -> Vec:
    return (-x[0], -x[1])


def perp(x: Vec) -> Vec:
    """Rotate 90 degrees counterclockwise and scale by sqrt(3).

    Integer on the nose, and maps each tier's lattice onto the next tier's.
    """
    return (x[0] - 2 * x[1], 2 * x[0] - x[1])


def perp_inv(x: Vec) -> Vec:
    """Inverse of perp; only exact on vectors that are perp images (tier >= 1)."""
    a = -x[0] + 2 * x[1]
    b = -2 * x[0] + x[1]
    if a % 3 or b % 3:
        raise ValueError(f"{x} is not in the image of perp")
    return (a // 3, b // 3)


def mirror(x: Vec) -> Vec:
    """Reflect across the Cartesian x-axis (the a1 line)."""
    return (x[0] - x[1], -x[1])


def norm_sq(x: Vec) -> int:
    """Squared Cartesian length; exact integer."""
    return x[0] * x[0] - x[0] * x[1] + x[1] * x[1]


def cart(x: Vec) -> tuple[float, float]:
    return (x[0] - x[1] / 2.0, x[1] * math.sqrt(3.0) / 2.0)


def coset_index(x: Vec) -> int:
    """Index of x among the three cosets of the tier-1 sublattice: (alpha+beta) mod 3."""
    return (x[0] + x[1]) % 3


@dataclass(frozen=True)
class Frame:
    """One member of the sublattice chain, presented by a 120-degree basis.

    tier 0 is the ambient lattice; tier t+1 is the index-3 sublattice obtained
    by rotating tier t by 90 degrees and scaling by sqrt(3) (equivalently,
    tier t+2 = 3 * tier t). det of the basis matrix is 3^tier.
    """

    tier: int
    b1: Vec
    b2: Vec

    @property
    def name(self) -> str:
        t = self.tier
        if t % 2 == 0:
            s = 3 ** (t // 2)
            return "Q" if s == 1 else f"{s}Q"
        return f"{3 ** ((t + 1) // 2)}P"

    @property
    def det(self) -> int:
        return 3**self.tier

    @property
    def b3(self) -> Vec:
        return add(self.b1, self.b2)

    def axis_vec(self, axis: int) -> Vec:
        # axis 0,1,2 <-> D1=b1, D2=b2, D3=b1+b2
        if axis == 0:
            return self.b1
        if axis == 1:
            return self.b2
        return self.b3

    def dir_vec(self, slot: int) -> Vec:
        # slots 0..5 <-> +D1,+D2,+D3,-D1,-D2,-D3
        v = self.axis_vec(slot % 3)
        return v if slot < 3 else neg(v)

    def dir_slot(self, v: Vec) -> int | None:
        """Slot index of an oriented unit direction of this frame, else None."""
        for slot in range(6):
            if self.dir_vec(slot) == v:
                return slot
        return None

    def to_local(self, x: Vec) -> tuple[int, int, int]:
        """Solve x = u*b1 + v*b2 exactly: returns (u_num, v_num, det).

        (u_num/det, v_num/det) are the frame coordinates; integral iff x is a
        frame member.
        """
        # adjugate of the column matrix [b1 b2]
        u = self.b2[1] * x[0] - self.b2[0] * x[1]
        v = -self.b1[1] * x[0] + self.b1[0] * x[1]
        return (u, v, self.det)

    def local(self, x: Vec) -> Vec:
        """Exact frame coordinates of a frame member."""
        u, v, d = self.to_local(x)
        if u % d or v % d:
            raise ValueError(f"{x} is not a member of frame {self.name}")
        return (u // d, v // d)

    def from_local(self, uv: Vec) -> Vec:
        return add(smul(uv[0], self.b1), smul(uv[1], self.b2))

    def contains(self, x: Vec) -> bool:
        u, v, d = self.to_local(x)
        return u % d == 0 and v % d == 0

    def reduce(self, x: Vec) -> Vec:
        """Canonical representative of x modulo this frame (floor reduction)."""
        u, v, d = self.to_local(x)
        return sub(x, self.from_local((u // d, v // d)))

    def length(self) -> float:
        """Cartesian length of a basis vector: sqrt(3)^tier."""
        return math.sqrt(3.0) ** self.tier


@lru_cache(maxsize=None)
def frame(tier: int) -> Frame:
    if tier < 0:
        raise ValueError("tier must be >= 0")
    if tier == 0:
        return Frame(0, (1, 0), (0, 1))
    if tier == 1:
        return Frame(1, (2, 1), (-1, 1))
    prev = frame(tier - 2)
    return Frame(tier, smul(3, prev.b1), smul(3, prev.b2))


def frame_by_name(name: str) -> Frame:
    for t in range(32):
        if frame(t).name == name:
            return frame(t)
    raise ValueError(f"unknown frame name {name!r}")


def in_scaled_frame(x: Vec, fr: Frame, k: int) -> bool:
    """True iff x lies in 2^k * frame."""
    if k < 0:
        raise ValueError("k must be >= 0")
    u, v, d = fr.to_local(x)
    m = d << k
    return u % m == 0 and v % m == 0


# Slot bookkeeping shared by the decoration layer. Slot order is
# [+D1, +D2, +D3, -D1, -D2, -D3]; angular (counterclockwise) order differs.
SLOT_COUNT = 6
CCW_SLOTS = (0, 2, 1, 3, 5, 4)  # slots listed in increasing angle
# rot60 sends the direction in slot i to the direction in slot ROT60_SLOT[i]
ROT60_SLOT = (2, 3, 1, 5, 0, 4)
NEXT_AXIS = (2, 0, 1)  # axis of rot60(axis vector)
PREV_AXIS = (1, 2, 0)  # axis of rot300(axis vector)


def opposite_slot(slot: int) -> int:
    return (slot + 3) % 6


def ccw_index(slot: int) -> int:
    return CCW_SLOTS.index(slot)


def perpendicular_axis(axis: int, tier: int = 0) -> int:
    """Axis index in the next frame of perp(axis vector).

    Axis vectors sit at 0/120/60 degrees in even frames and 30/150/90 in odd
    ones, so a quarter turn advances the axis differently by tier parity:
    even perp(b1) = +D3', odd perp(b1) = +D2'."""
    table = (2, 0, 1) if tier % 2 == 0 else (1, 2, 0)
    return table[axis]


def verify_intersection_identities(k: int, l: int, window: int) -> bool:
    """Exhaustively check the two scaled intersection identities on a window.

    Over all |alpha|,|beta| <= window confirms, in chain notation with
    A_t = tier-t frame:
      2^(l-1)*A_(2k-1)  intersect  2^l*A_(2k-2)  ==  2^l*A_(2k-1)
      2^l*A_(2k-1)      intersect  2^(l-1)*A_(2k) ==  2^l*A_(2k)
    i.e. the index-2/index-3 steps of the chain interleave exactly.
    """
    if k < 1 or l < 1:
        raise ValueError("k and l must be >= 1")
    if window < 1 or window > 10**6 or 3**k * 2**l > 10**9:
        raise ValueError("window or exponents out of supported range")
    fp = frame(2 * k - 1)  # 3^k P
    fq_lo = frame(2 * k - 2)  # 3^(k-1) Q
    fq_hi = frame(2 * k)  # 3^k Q
    for a in range(-window, window + 1):
        for b in range(-window, window + 1):
            x = (a, b)
            lhs1 = in_scaled_frame(x, fp, l - 1) and in_scaled_frame(x, fq_lo, l)
            if lhs1 != in_scaled_frame(x, fp, l):
                return False
            lhs2 = in_scaled_frame(x, fp, l) and in_scaled_frame(x, fq_hi, l - 1)
            if lhs2 != in_scaled_frame(x, fq_hi, l):
                return False
    return True


def points_in_disk(center: Vec, radius: float, fr: Frame, base: Vec = ZERO, scale_k: int = 0):
    """Yield all points of base + 2^scale_k * frame within Cartesian distance radius.

    Deterministic order (local u, then v). Negative radius is the empty disk.
    """
    if radius < 0:
        return
    step = fr.length() * (1 << scale_k)
    cx, cy = cart(sub(center, base))
    b1c = cart(fr.b1)
    b2c = cart(fr.b2)
    s = 1 << scale_k
    # solve float local coords of the center, then take a safe box
    det = b1c[0] * b2c[1] - b1c[1] * b2c[0]
    u0 = (cx * b2c[1] - cy * b2c[0]) / det / s
    v0 = (-cx * b1c[1] + cy * b1c[0]) / det / s
    m = int(2.0 * radius / (math.sqrt(3.0) * step)) + 2
    r2 = radius * radius
    for u in range(math.floor(u0) - m, math.floor(u0) + m + 1):
        for v in range(math.floor(v0) - m, math.floor(v0) + m + 1):
            p = add(base, fr.from_local((u * s, v * s)))
            if norm_sq(sub(p, center)) <= r2:
                yield p
