"""Exact mutation calculus for log data on an oriented rank-2 lattice.

Everything is integer or rational arithmetic: no floats anywhere in the
mathematical core, so every verdict and certificate is exact.
"""

from .errors import (
    ClosureViolation,
    DuplicateDirection,
    IllegalMutation,
    InvalidDatum,
    LogMutError,
    NotRankOne,
    NotRankTwo,
    PartitionSumMismatch,
    ShapeMismatch,
    SubordinationRequired,
    TooFewEdges,
    WallSynthesisError,
    ZeroVector,
)
from .lattice import (
    UnimodularMap,
    Vec,
    ccw_key,
    ccw_precedes,
    pos_part,
    primitive_split,
    sform,
    shear_map,
    sort_ccw,
    to_east,
)
from .logdatum import (
    ComponentReport,
    ComponentType,
    Edge,
    FanPresentation,
    LogDatum,
    Partition,
    Rank,
    an_datum,
    apply_to_datum,
    component_types,
    datum_from_obj,
    datum_to_obj,
    dual_polygon,
    fan_presentation,
    is_irreducible,
    is_zero_mutable_rank_one,
    jerry_datum,
    named,
    partitions_of,
    polygon,
    rank,
    tom_datum,
    u_height,
    validate,
)
from .mutation import (
    MutationIndex,
    legal_mutations,
    mutate,
    mutate_by_value,
    mutate_with_trace,
)
from .decider import (
    CertStep,
    Certificate,
    Verdict,
    canonical_rep,
    canonical_tuple,
    canonicalize,
    enumerate_zero_mutable,
    is_zero_mutable,
    replay,
    verify_certificate,
)
from .wallfn import (
    BiPoly,
    CheckReport,
    WallAssignment,
    bipoly_from_obj,
    bipoly_to_obj,
    format_bipoly,
    generic_wall_assignment,
    is_generic,
    is_smooth_curve,
    is_subordinate,
    joint_compatible,
    kinks,
    parse_bipoly,
    restrict_to_u,
)
from .render import RenderSpec, render_svg

__version__ = "0.1.0"

__all__ = [
    "BiPoly",
    "CertStep",
    "Certificate",
    "CheckReport",
    "ClosureViolation",
    "ComponentReport",
    "ComponentType",
    "DuplicateDirection",
    "Edge",
    "FanPresentation",
    "IllegalMutation",
    "InvalidDatum",
    "LogDatum",
    "LogMutError",
    "MutationIndex",
    "NotRankOne",
    "NotRankTwo",
    "Partition",
    "PartitionSumMismatch",
    "Rank",
    "RenderSpec",
    "ShapeMismatch",
    "SubordinationRequired",
    "TooFewEdges",
    "UnimodularMap",
    "Vec",
    "Verdict",
    "WallAssignment",
    "WallSynthesisError",
    "ZeroVector",
    "an_datum",
    "apply_to_datum",
    "canonical_rep",
    "canonical_tuple",
    "canonicalize",
    "ccw_key",
    "ccw_precedes",
    "sort_ccw",
    "shear_map",
    "component_types",
    "datum_from_obj",
    "datum_to_obj",
    "dual_polygon",
    "enumerate_zero_mutable",
    "fan_presentation",
    "bipoly_from_obj",
    "bipoly_to_obj",
    "format_bipoly",
    "generic_wall_assignment",
    "is_generic",
    "is_irreducible",
    "is_smooth_curve",
    "is_subordinate",
    "is_zero_mutable",
    "is_zero_mutable_rank_one",
    "jerry_datum",
    "joint_compatible",
    "kinks",
    "legal_mutations",
    "mutate",
    "mutate_by_value",
    "mutate_with_trace",
    "named",
    "parse_bipoly",
    "partitions_of",
    "polygon",
    "pos_part",
    "primitive_split",
    "rank",
    "render_svg",
    "replay",
    "restrict_to_u",
    "sform",
    "to_east",
    "tom_datum",
    "u_height",
    "validate",
    "verify_certificate",
]
