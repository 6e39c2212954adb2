"""Command line front end.

Exit codes: 0 all good, 1 a verification rule failed, 2 bad input or usage.
Machine-readable output goes to stdout; errors go to stderr as one JSON line.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .assembly import (
    Window,
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
from .errors import HexweaveError, SeedFormatError
from .lattice import ZERO, frame
from .patchjson import (
    dumps,
    load_document,
    load_patch,
    load_seed,
    patch_from_json,
    patch_to_json,
    seed_from_json,
    write_text_atomic,
)
from .seeds import TAIL_STRICT, AdicSeed, lift, make_seed, singularity_prefix_check
from .svg import RenderSpec, render_svg
from .triangulation import (
    Triangulation,
    enumerate_triangles,
    need_depth,
    verify_nesting,
    verify_right_bisection,
)

_CHECK_NAMES = ("rt1", "rt2", "legal", "nesting", "bisect", "parity", "aperiodic")


def _err(message: str) -> int:
    sys.stderr.write(json.dumps({"error": message}) + "\n")
    return 2


def _parse_vec(text: str, what: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise SeedFormatError(f"{what} must look like 'a,b'")
    try:
        return (int(parts[0]), int(parts[1]))
    except ValueError:
        raise SeedFormatError(f"{what} must be integer coordinates") from None


def _default_seed(depth: int, tail_mode: str, prng_seed: int) -> AdicSeed:
    """Draw `depth` offsets from the keyed generator, then attach the tail.

    Drawing eagerly and extending lazily use the same per-level stream, so a
    prng-tailed seed is identical however much of it is materialized."""
    probe = AdicSeed(frame(0), ZERO, (), ("prng", prng_seed))
    offsets = tuple(probe.rep(k) for k in range(1, depth + 1))
    tail = TAIL_STRICT if tail_mode == "strict" else ("prng", prng_seed)
    return make_seed(frame(0), ZERO, offsets, tail)


def _cosets_arg(text: str) -> list[int]:
    try:
        vals = [int(p) for p in text.split(",") if p != ""]
    except ValueError:
        raise SeedFormatError("cosets must be integers 0..2, comma separated") from None
    if not vals or any(v not in (0, 1, 2) for v in vals):
        raise SeedFormatError("cosets must be integers 0..2, comma separated")
    return vals


def cmd_generate(args) -> int:
    radius = args.radius
    if radius <= 0:
        return _err("radius must be positive")
    depth = args.depth if args.depth is not None else need_depth(radius)
    if args.seed_file:
        q = load_seed(args.seed_file)
        if q.frame.tier != 0:
            return _err("patch generation starts from a base-frame seed")
    else:
        q = _default_seed(depth, args.tail, args.prng_seed)
    window = Window(_parse_vec(args.center, "center"), radius)
    mode = "penrose" if args.mode == "double" else args.mode
    if mode == "ts":
        patch = build_ts(q, window)
    elif mode == "penrose":
        cosets = _cosets_arg(args.coset)
        if len(cosets) != 1:
            return _err("double-hexagon mode takes exactly one coset")
        patch = build_penrose(q, cosets[0], window)
    else:
        if args.tiers is not None:
            if args.tiers < 1:
                return _err("tiers must be at least 1")
            cosets = _cosets_arg(args.coset)[: args.tiers - 1]
            if len(cosets) != args.tiers - 1:
                return _err("need one coset choice per lift")
        else:
            cosets = _cosets_arg(args.coset)
        patch = build_ntier(q, tuple(cosets), window)
    if args.format == "svg":
        text = render_svg(patch, RenderSpec(scale=args.svg_scale))
    else:
        text = dumps(patch_to_json(patch))
    if args.out:
        write_text_atomic(args.out, text)
        sys.stdout.write(json.dumps({"written": args.out,
                                     "tiles": len(patch.tiles)}) + "\n")
    else:
        sys.stdout.write(text)
    return 0


def _run_checks(patch, names, args) -> list:
    reports = []
    for name in names:
        if name == "rt1":
            reports.append(verify_rt1(patch))
        elif name == "rt2":
            reports.append(verify_rt2(patch))
        elif name == "legal":
            reports.append(verify_legal(patch))
        elif name == "aperiodic":
            reports.append(scan_translations(patch, args.max_shift))
        elif name in ("nesting", "bisect", "parity"):
            if patch.seed is None:
                raise SeedFormatError(f"check {name!r} needs the seed recorded "
                                      f"in the patch")
            q = patch.seed
            center, radius = patch.window.center, patch.window.radius
            if name == "nesting":
                top = max((t.level for t in patch.tiles.values()), default=0)
                tris = enumerate_triangles(q, center, radius, max(top, 1))
                reports.append(verify_nesting(tris, q.frame, center, radius,
                                              args.margin))
            elif name == "bisect":
                cosets = ([patch.coset] if patch.coset is not None else [0, 1, 2])
                for c in cosets:
                    reports.append(verify_right_bisection(q, lift(q, c),
                                                          center, radius))
            else:
                cosets = ([patch.coset] if patch.coset is not None else [0, 1, 2])
                for c in cosets:
                    reports.append(verify_parity_agreement(q, c, patch.window,
                                                           patch.chirality))
        else:
            raise SeedFormatError(f"unknown check {name!r}")
    return reports


def cmd_verify(args) -> int:
    patch = load_patch(args.patch)
    if args.checks == "auto":
        if patch.mode == "ts":
            names = ["rt1", "rt2"]
        elif patch.mode == "penrose":
            names = ["legal"]
        else:
            names = []
        if patch.seed is not None and patch.mode in ("ts", "penrose"):
            names += ["nesting", "bisect"]
    else:
        names = [n.strip() for n in args.checks.split(",") if n.strip()]
        bad = [n for n in names if n not in _CHECK_NAMES]
        if bad:
            return _err(f"unknown checks: {', '.join(bad)}")
    reports = _run_checks(patch, names, args)
    out = {"mode": patch.mode, "reports": [r.to_json() for r in reports]}
    ok = all(r.ok for r in reports)
    out["pass"] = ok
    sys.stdout.write(dumps(out))
    return 0 if ok else 1


def _patch_stats(patch) -> dict:
    """Counts read straight off a stored patch, no rebuild."""
    hist: dict[int, int] = {}
    letters: dict[int, dict[str, int]] = {}
    colors = {"red": 0, "blue": 0}
    for (tier, _), tile in patch.tiles.items():
        if tier == 0:
            hist[tile.level] = hist.get(tile.level, 0) + 1
        per = letters.setdefault(tier, {"L": 0, "R": 0})
        per[tile.type_letter] += 1
        for sense in tile.colors:
            colors["red" if sense > 0 else "blue"] += 1
    total = sum(hist.values())
    out = {
        "mode": patch.mode,
        "points": total,
        "histogram": {str(k): hist[k] for k in sorted(hist)},
        "frequency": {str(k): hist[k] / total for k in sorted(hist)},
        "expected_frequency": {str(k): 3 * 4.0 ** -(k + 1) for k in sorted(hist)},
        "type_counts": {str(t): letters[t] for t in sorted(letters)},
        "color_counts": colors,
    }
    if patch.tiers >= 2:
        out["type_census"] = type_census(patch)
    if patch.seed is not None:
        out["singularity_scores"] = singularity_prefix_check(patch.seed)
    return out


def cmd_stats(args) -> int:
    if args.input_file:
        doc = load_document(args.input_file)
        if "mode" in doc:
            sys.stdout.write(dumps(_patch_stats(patch_from_json(doc))))
            return 0
        q = seed_from_json(doc)
    else:
        q = _default_seed(args.depth if args.depth is not None
                          else need_depth(args.radius),
                          args.tail, args.prng_seed)
    center = _parse_vec(args.center, "center")
    tri = Triangulation(q)
    hist = tri.level_histogram(center, args.radius)
    total = sum(hist.values())
    expected = {k: 3 * 4.0 ** -(k + 1) for k in sorted(hist)}
    out = {
        "points": total,
        "histogram": {str(k): hist[k] for k in sorted(hist)},
        "frequency": {str(k): hist[k] / total for k in sorted(hist)},
        "expected_frequency": {str(k): expected[k] for k in sorted(hist)},
        "singularity_scores": singularity_prefix_check(q),
    }
    if args.ntier_census:
        patch = build_ntier(q, tuple(_cosets_arg(args.coset)),
                            Window(center, args.radius))
        out["type_census"] = type_census(patch)
    sys.stdout.write(dumps(out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hexweave",
                                 description="hierarchical hexagonal tilings: "
                                             "generate, verify, measure")
    ap.add_argument("--version", action="version", version=f"hexweave {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build a patch and write JSON or SVG")
    g.add_argument("seed_file", nargs="?", default=None,
                   help="seed JSON (default: deterministic seed from --prng-seed)")
    g.add_argument("--mode", choices=("ts", "penrose", "double", "ntier"),
                   default="ts")
    g.add_argument("--coset", default="0",
                   help="coset (penrose) or comma list of lift choices (ntier)")
    g.add_argument("--tiers", type=int, default=None,
                   help="ntier: number of stacked tiers (= 1 + lift count)")
    g.add_argument("--radius", type=float, default=24.0)
    g.add_argument("--center", default="0,0")
    g.add_argument("--depth", type=int, default=None,
                   help="declared seed depth (default: from radius)")
    g.add_argument("--tail", choices=("strict", "prng"), default="prng")
    g.add_argument("--prng-seed", type=int, default=0)
    g.add_argument("--format", choices=("json", "svg"), default="json")
    g.add_argument("--svg-scale", type=float, default=36.0)
    g.add_argument("--out", default=None)
    g.set_defaults(fn=cmd_generate)

    v = sub.add_parser("verify", help="run matching-rule checks on a patch file")
    v.add_argument("patch")
    v.add_argument("--checks", default="auto",
                   help=f"comma list from {','.join(_CHECK_NAMES)} (default auto)")
    v.add_argument("--margin", type=float, default=8.0)
    v.add_argument("--max-shift", type=int, default=8)
    v.set_defaults(fn=cmd_verify)

    s = sub.add_parser("stats", help="histograms and counts for a seed or patch")
    s.add_argument("input_file", nargs="?", default=None,
                   help="seed or patch JSON (patches are tallied as stored)")
    s.add_argument("--radius", type=float, default=64.0)
    s.add_argument("--center", default="0,0")
    s.add_argument("--depth", type=int, default=None)
    s.add_argument("--tail", choices=("strict", "prng"), default="prng")
    s.add_argument("--prng-seed", type=int, default=0)
    s.add_argument("--ntier-census", action="store_true")
    s.add_argument("--coset", default="0")
    s.set_defaults(fn=cmd_stats)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except FileNotFoundError as e:
        return _err(f"no such file: {e.filename}")
    except HexweaveError as e:
        return _err(str(e))


if __name__ == "__main__":
    sys.exit(main())
