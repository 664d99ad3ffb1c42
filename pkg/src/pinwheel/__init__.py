"""Exact-arithmetic pinwheel tiling toolkit.

Layers: exact scalars over Q(sqrt5) and the angle lattice; the discovered
substitution rule and labeled patches; cylinder/groupoid set data over
finite patches; the generator *-algebra with its convolution oracle; the
matrix circle-algebra tower with the simplicity covering search; and the
stationary K-theory limit group.
"""

from .exact import (
    Angle,
    ExactComplex,
    QRoot5,
    RigidMotion,
    Vec2,
    gamma_distance,
    motion_apply,
    motion_compose,
    motion_inverse,
    qr5_sqrt,
    rotation_matrix,
    unit_phase,
)
from .geometry import (
    Patch,
    Placement,
    ProtoTile,
    SubstitutionRule,
    Tile,
    adjacency_census,
    default_prototiles,
    find_decompositions,
    is_primitive,
    iterate,
    label_angle,
    label_pose,
    label_puncture,
    patch_from_json,
    patch_to_json,
    patch_to_svg,
    pinwheel_rule,
    substitute,
    verify_rule,
)
from .hull import (
    ClopenV,
    Incompatible,
    PointedPatch,
    pointed_from_patch,
    rotation_factor,
    separation_epsilon,
    tiling_distance_estimate,
    u_membership,
    v_compose,
    v_equal,
    v_invert,
    v_range,
    v_source,
)
from .algebra import (
    AlgebraElement,
    Generator,
    adjoint,
    convolution_oracle,
    identity,
    induced_action,
    is_partial_isometry,
    is_projection,
    multiply,
    parse_element,
    to_text,
    z_commutation_check,
    z_element,
)
from .tower import (
    Arc,
    ArcPoint,
    MatrixFunction,
    arc_of_length,
    covers_circle,
    full_circle_arc,
    norm_estimate,
    phi,
    phi_chain,
    psi,
    psi_hom_check,
    rotation_orbit_gaps,
    row_index,
    simplicity_stage,
)
from .ktheory import (
    InvariantPair,
    LimitElement,
    invariants,
    kernel_test,
    limit_add,
    limit_equal,
    limit_neg,
    nonsplit_certificate,
    quotient_map,
)

__all__ = [
    "Angle", "ExactComplex", "QRoot5", "RigidMotion", "Vec2",
    "gamma_distance", "motion_apply", "motion_compose", "motion_inverse",
    "qr5_sqrt", "rotation_matrix", "unit_phase",
    "Patch", "Placement", "ProtoTile", "SubstitutionRule", "Tile",
    "adjacency_census", "default_prototiles", "find_decompositions",
    "is_primitive", "iterate", "label_angle", "label_pose", "label_puncture",
    "patch_from_json", "patch_to_json", "patch_to_svg", "pinwheel_rule",
    "substitute", "verify_rule",
    "ClopenV", "Incompatible", "PointedPatch", "pointed_from_patch",
    "rotation_factor", "separation_epsilon", "tiling_distance_estimate",
    "u_membership", "v_compose", "v_equal", "v_invert", "v_range", "v_source",
    "AlgebraElement", "Generator", "adjoint", "convolution_oracle", "identity",
    "induced_action", "is_partial_isometry", "is_projection", "multiply",
    "parse_element", "to_text", "z_commutation_check", "z_element",
    "Arc", "ArcPoint", "MatrixFunction", "arc_of_length", "covers_circle",
    "full_circle_arc", "norm_estimate", "phi", "phi_chain", "psi",
    "psi_hom_check", "rotation_orbit_gaps", "row_index", "simplicity_stage",
    "InvariantPair", "LimitElement", "invariants", "kernel_test", "limit_add",
    "limit_equal", "limit_neg", "nonsplit_certificate", "quotient_map",
]
