"""Dixmier and Friedrichs angles between polyhedral convex cones."""

from .angles import (
    AngleResult,
    cos_dixmier_exact,
    cos_dixmier_iterative,
    cos_dixmier_oracle,
    cos_friedrichs,
    enumerate_faces,
    support_width,
)
from .cone import (
    ConeSpec,
    ConeTooLargeError,
    PolyhedralCone,
    cone_from_generators,
    cone_from_halfspaces,
    cone_sum,
    contains,
    difference,
    dual,
    equals,
    full_space,
    intersect,
    is_linear_subspace,
    is_subset,
    lineality_space,
    negate,
    nonnegative_orthant,
    orthogonal_complement,
    polar,
    subspace,
    zero_cone,
)
from .projection import ProjectionResult, moreau_decompose, project
from .random_cones import RandomConeParams, gen_random_cone

__all__ = [
    "AngleResult", "ConeSpec", "ConeTooLargeError", "PolyhedralCone", "ProjectionResult",
    "RandomConeParams", "cone_from_generators", "cone_from_halfspaces", "cone_sum", "contains",
    "cos_dixmier_exact", "cos_dixmier_iterative", "cos_dixmier_oracle", "cos_friedrichs",
    "difference", "dual", "enumerate_faces", "equals", "full_space", "gen_random_cone",
    "intersect", "is_linear_subspace", "is_subset", "lineality_space", "moreau_decompose",
    "negate", "nonnegative_orthant", "orthogonal_complement", "polar", "project", "subspace",
    "support_width", "zero_cone",
]
