"""Self-similar set toolkit: similarity algebra, weak-separation scans,
dimension estimation and tangent constructions.

The heavy lifting lives in the C++ extension ``assouad._core``; this package
re-exports its public surface.
"""

from ._core import (  # noqa: F401
    BackendMismatch,
    IfsSystem,
    SpecError,
    assouad_estimate,
    attractor_points,
    bandt_graf_line_json,
    bandt_graf_witness,
    box_dimension_estimate,
    exact_overlap_scan,
    hausdorff_distance,
    load_system,
    moran_solve,
    multiplicity_scan,
    one_sided_hausdorff,
    parse_system,
    pretangent_ek,
    reduced_similarity_dimension,
    registry_names,
    registry_spec_json,
    render_png,
    similarity_dimension,
    stopping_set,
    wsp_scan,
)

__all__ = [
    "BackendMismatch",
    "IfsSystem",
    "SpecError",
    "assouad_estimate",
    "attractor_points",
    "bandt_graf_line_json",
    "bandt_graf_witness",
    "box_dimension_estimate",
    "exact_overlap_scan",
    "hausdorff_distance",
    "load_system",
    "moran_solve",
    "multiplicity_scan",
    "one_sided_hausdorff",
    "parse_system",
    "pretangent_ek",
    "reduced_similarity_dimension",
    "registry_names",
    "registry_spec_json",
    "render_png",
    "similarity_dimension",
    "stopping_set",
    "wsp_scan",
]
