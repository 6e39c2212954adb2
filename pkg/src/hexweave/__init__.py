"""Deterministic generator and verifier for hierarchical hexagonal tilings.

Seeds are towers of lattice-coset representatives; from one seed the package
derives nested triangulations, stripe-and-arrow tile decorations, composite
(colour-inherited) tiles, double-hexagon patches over a chosen coset, and
stacked multi-tier patches, together with checkable local matching rules.
"""

__version__ = "0.1.0"

from .errors import (
    DegenerateSeedError,
    HexweaveError,
    InsufficientDepthError,
    SeedFormatError,
)
from .lattice import Frame, Vec, frame, frame_by_name, verify_intersection_identities
from .seeds import (
    AdicSeed,
    SeedTower,
    build_tower,
    lift,
    make_seed,
    project,
    random_seed,
    singularity_prefix_check,
    zero_seed,
)
from .triangulation import (
    MaxEdge,
    PointClass,
    Report,
    TriangleRef,
    Triangulation,
    Violation,
    classify,
    enumerate_triangles,
    level_of,
    maximal_edge,
    need_depth,
    verify_nesting,
    verify_right_bisection,
)
from .decor import (
    HexTile,
    WELL_ARROW_CHIRALITY,
    classify_prototile,
    complete_corner_hexagon,
    decorate,
    is_well_arrowed,
    mirror_tile,
    prototile_type,
    rotate_tile,
    well_arrow_pattern,
)
from .assembly import (
    Patch,
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
from .patchjson import load_patch, load_seed, save_patch, save_seed
from .svg import RenderSpec, render_svg

__all__ = [
    "AdicSeed", "DegenerateSeedError", "Frame", "HexTile", "HexweaveError",
    "InsufficientDepthError", "MaxEdge", "Patch", "PointClass", "RenderSpec",
    "Report", "SeedFormatError", "SeedTower", "TriangleRef", "Triangulation",
    "Vec", "Violation", "WELL_ARROW_CHIRALITY", "build_ntier", "build_penrose",
    "build_tower", "build_ts", "classify", "classify_prototile",
    "complete_corner_hexagon", "decorate", "enumerate_triangles", "frame",
    "frame_by_name", "is_well_arrowed", "level_of", "lift", "load_patch",
    "load_seed", "make_seed", "maximal_edge", "mirror_tile", "need_depth",
    "project", "prototile_type", "random_seed", "render_svg", "rotate_tile",
    "save_patch", "save_seed", "scan_translations", "singularity_prefix_check",
    "type_census", "verify_coset_union", "verify_intersection_identities",
    "verify_legal", "verify_nesting", "verify_parity_agreement",
    "verify_right_bisection", "verify_rt1", "verify_rt2",
    "well_arrow_pattern", "zero_seed",
]
