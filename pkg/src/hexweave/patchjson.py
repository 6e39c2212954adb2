"""Canonical JSON for seeds and patches, plus atomic file writes.

Serialization is byte-stable: keys sorted, compact separators, one trailing
newline, tiles ordered by (tier, level, center). Loading rebuilds full tile
objects so every verifier can run on a saved patch.
"""

from __future__ import annotations

import json
import os
import tempfile

from . import __version__
from .assembly import Patch, Window
from .decor import HexTile
from .errors import SeedFormatError
from .lattice import Vec, coset_index, frame_by_name
from .seeds import TAIL_STRICT, AdicSeed, make_seed

# canonical bases of the three second-tier classes, by coset of the base point
_TIER1_BASES = {0: (0, 0), 1: (0, 1), 2: (1, 1)}

_SENSE = {1: "ccw", -1: "cw"}
_COLOR = {1: "red", -1: "blue"}
_SENSE_IN = {v: k for k, v in _SENSE.items()}
_COLOR_IN = {v: k for k, v in _COLOR.items()}


def slot_label(slot: int) -> str:
    return ("+" if slot < 3 else "-") + f"D{slot % 3 + 1}"


def label_slot(label: str) -> int:
    try:
        sign, axis = label[0], int(label[2]) - 1
        if label[1] != "D" or axis not in (0, 1, 2) or sign not in "+-":
            raise ValueError
    except (ValueError, IndexError):
        raise SeedFormatError(f"bad direction label {label!r}") from None
    return axis if sign == "+" else axis + 3


def seed_to_json(seed: AdicSeed) -> dict:
    if seed.tail[0] == "lift":
        raise ValueError("lifted seeds are derived; serialize the ground seed")
    tail = {"mode": "strict"} if seed.tail[0] == "strict" else \
        {"mode": "prng", "seed": seed.tail[1]}
    out = {
        "frame": seed.frame.name,
        "depth": seed.depth,
        "coset": coset_index(seed.base),
        "offsets": [list(c) for c in seed.offsets],
        "tail": tail,
    }
    if seed.frame.tier >= 2:
        out["base"] = list(seed.base)
    return out


def _expect(d: dict, key: str, kinds) -> object:
    if key not in d:
        raise SeedFormatError(f"missing key {key!r}")
    v = d[key]
    if not isinstance(v, kinds):
        raise SeedFormatError(f"key {key!r} has wrong type")
    return v


def _vec(v, what: str) -> Vec:
    if (not isinstance(v, (list, tuple)) or len(v) != 2
            or not all(isinstance(c, int) for c in v)):
        raise SeedFormatError(f"{what} must be a pair of integers")
    return (v[0], v[1])


def seed_from_json(d: dict) -> AdicSeed:
    if not isinstance(d, dict):
        raise SeedFormatError("seed must be a JSON object")
    fr = frame_by_name(str(_expect(d, "frame", str)))
    offsets = _expect(d, "offsets", list)
    offs = [_vec(o, "offset") for o in offsets]
    depth = _expect(d, "depth", int)
    if depth != len(offs):
        raise SeedFormatError("depth disagrees with the offset list")
    tail_d = _expect(d, "tail", dict)
    mode = tail_d.get("mode")
    if mode == "strict":
        tail = TAIL_STRICT
    elif mode == "prng":
        tail = ("prng", int(_expect(tail_d, "seed", int)))
    else:
        raise SeedFormatError(f"unknown tail mode {mode!r}")
    coset = _expect(d, "coset", int)
    if fr.tier >= 2:
        base = _vec(_expect(d, "base", (list, tuple)), "base")
    elif fr.tier == 1:
        if coset not in _TIER1_BASES:
            raise SeedFormatError("coset must be 0, 1 or 2")
        base = _TIER1_BASES[coset]
    else:
        base = (0, 0)
    seed = make_seed(fr, base, offs, tail)
    if coset_index(seed.base) != coset:
        raise SeedFormatError("coset disagrees with the base point")
    return seed


def tile_to_json(tile: HexTile) -> dict:
    return {
        "center": list(tile.center),
        "tier": tile.tier,
        "level": tile.level,
        "stripe": f"D{tile.axis + 1}",
        "shift": tile.shift_sign,
        "type": tile.type_letter,
        "rot": tile.rot_index(),
        "arrows": [_SENSE[s] for s in tile.arrows],
        "colors": [_COLOR[s] for s in tile.colors],
        "marks": [[slot_label(p), slot_label(o)] for p, o in tile.marks],
    }


def tile_from_json(d: dict, color_keying: str) -> HexTile:
    center = _vec(_expect(d, "center", (list, tuple)), "center")
    tier = _expect(d, "tier", int)
    level = _expect(d, "level", int)
    stripe = str(_expect(d, "stripe", str))
    if len(stripe) != 2 or stripe[0] != "D" or stripe[1] not in "123":
        raise SeedFormatError(f"bad stripe label {stripe!r}")
    axis = int(stripe[1]) - 1
    shift = _expect(d, "shift", int)
    if shift not in (1, -1):
        raise SeedFormatError("shift must be +1 or -1")
    letter = str(_expect(d, "type", str))
    if letter not in ("L", "R"):
        raise SeedFormatError("type must be L or R")
    arrows = [_SENSE_IN.get(a) for a in _expect(d, "arrows", list)]
    colors = [_COLOR_IN.get(c) for c in _expect(d, "colors", list)]
    if len(arrows) != 6 or None in arrows:
        raise SeedFormatError("arrows must be six of ccw/cw")
    if len(colors) != 6 or None in colors:
        raise SeedFormatError("colors must be six of red/blue")
    marks_raw = _expect(d, "marks", list)
    if len(marks_raw) != 2:
        raise SeedFormatError("expected two marks")
    marks = tuple((label_slot(str(m[0])), label_slot(str(m[1])))
                  for m in marks_raw)
    return HexTile(center, tier, level, axis, shift, tuple(arrows),
                   tuple(colors), color_keying, marks, letter)


def _tile_sort_key(entry: dict):
    return (entry["tier"], entry["level"], entry["center"][0], entry["center"][1])


def patch_to_json(patch: Patch) -> dict:
    seeds: dict = {"q": seed_to_json(patch.seed)} if patch.seed else {}
    if patch.mode == "penrose":
        seeds["cosets"] = [patch.coset]
    elif patch.mode == "ntier":
        seeds["cosets"] = list(patch.coset_choices)
    else:
        seeds["cosets"] = []
    radius = patch.window.radius
    return {
        "mode": patch.mode,
        "seeds": seeds,
        "window": {
            "center": list(patch.window.center),
            "radius": int(radius) if float(radius).is_integer() else radius,
        },
        "tiles": sorted((tile_to_json(t) for t in patch.tiles.values()),
                        key=_tile_sort_key),
        "provenance": {
            "generator": "hexweave",
            "version": __version__,
            "chirality": patch.chirality,
        },
    }


def patch_from_json(d: dict) -> Patch:
    if not isinstance(d, dict):
        raise SeedFormatError("patch must be a JSON object")
    mode = _expect(d, "mode", str)
    if mode not in ("ts", "penrose", "ntier"):
        raise SeedFormatError(f"unknown mode {mode!r}")
    win_d = _expect(d, "window", dict)
    window = Window(_vec(_expect(win_d, "center", (list, tuple)), "center"),
                    _expect(win_d, "radius", (int, float)))
    seeds_d = _expect(d, "seeds", dict)
    seed = seed_from_json(seeds_d["q"]) if "q" in seeds_d else None
    cosets = seeds_d.get("cosets", [])
    if not isinstance(cosets, list) or not all(isinstance(c, int) for c in cosets):
        raise SeedFormatError("cosets must be a list of integers")
    tiles: dict[tuple[int, Vec], HexTile] = {}
    for entry in _expect(d, "tiles", list):
        tier = _expect(entry, "tier", int)
        keying = "paired" if mode == "ts" and tier == 0 else "self"
        tile = tile_from_json(entry, keying)
        tiles[(tile.tier, tile.center)] = tile
    prov = d.get("provenance", {})
    chirality = prov.get("chirality", 1) if isinstance(prov, dict) else 1
    return Patch(mode, window, tiles, seed=seed,
                 coset=cosets[0] if mode == "penrose" and cosets else None,
                 coset_choices=tuple(cosets) if mode == "ntier" else None,
                 chirality=chirality if chirality in (1, -1) else 1)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def write_text_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".hexweave-")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def save_patch(patch: Patch, path: str) -> None:
    write_text_atomic(path, dumps(patch_to_json(patch)))


def load_document(path: str) -> dict:
    """Raw JSON object from disk, with parse failures wrapped uniformly."""
    with open(path) as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise SeedFormatError(f"not valid JSON: {e}") from None
    if not isinstance(data, dict):
        raise SeedFormatError("top level must be a JSON object")
    return data


def load_patch(path: str) -> Patch:
    return patch_from_json(load_document(path))


def save_seed(seed: AdicSeed, path: str) -> None:
    write_text_atomic(path, dumps(seed_to_json(seed)))


def load_seed(path: str) -> AdicSeed:
    return seed_from_json(load_document(path))
