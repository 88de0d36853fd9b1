from disjunctive.closed_form import closed_form_nc
from disjunctive.limiting import (
    Family,
    LimitingGenerators,
    Stratum,
    admissible_families,
    limiting_member,
    limiting_nc,
    member_of,
    piece_normal_cones,
    regular_nc,
    uncovered_generators,
)
from disjunctive.sets import (
    DisjunctiveSet,
    SetTag,
    active_pieces,
    box,
    boxes,
    distance,
    nearest_piece,
    omega_e,
    omega_s,
    omega_v,
    snap,
)

__all__ = [
    "DisjunctiveSet",
    "SetTag",
    "LimitingGenerators",
    "Stratum",
    "Family",
    "box",
    "boxes",
    "omega_e",
    "omega_v",
    "omega_s",
    "active_pieces",
    "regular_nc",
    "limiting_nc",
    "limiting_member",
    "member_of",
    "distance",
    "nearest_piece",
    "snap",
    "closed_form_nc",
    "admissible_families",
    "piece_normal_cones",
    "uncovered_generators",
]
