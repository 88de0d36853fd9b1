from geometry.cone import (
    ConeGenerators,
    HalfspaceSystem,
    canonical,
    cone_member,
    cones_equal,
    dd_hrep_to_vrep,
    dd_vrep_to_hrep,
    intersect,
    normal_cone,
    reduce_generators,
)
from geometry.linear import rank
from geometry.polyhedron import Polyhedron, RowKind, active_set, contains
from geometry.projection import Projection, project

__all__ = [
    "Polyhedron",
    "RowKind",
    "ConeGenerators",
    "HalfspaceSystem",
    "Projection",
    "active_set",
    "contains",
    "normal_cone",
    "reduce_generators",
    "dd_hrep_to_vrep",
    "dd_vrep_to_hrep",
    "cone_member",
    "canonical",
    "cones_equal",
    "intersect",
    "project",
    "rank",
]
