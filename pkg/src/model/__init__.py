from model.fileformat import ProgramFormatError, load_program, loads_program, parse_set
from model.program import (
    Block,
    OrthoKind,
    OrthoProgram,
    Partition,
    Program,
    Residual,
    active_inequalities,
    admissible_partitions,
    block_active_pieces,
    block_points,
    is_feasible,
    nearest_partition,
    point,
    require_feasible,
    residual,
    subsystem,
)

__all__ = [
    "Block",
    "OrthoKind",
    "OrthoProgram",
    "Partition",
    "Program",
    "Residual",
    "ProgramFormatError",
    "active_inequalities",
    "admissible_partitions",
    "block_active_pieces",
    "block_points",
    "is_feasible",
    "load_program",
    "loads_program",
    "nearest_partition",
    "parse_set",
    "point",
    "require_feasible",
    "residual",
    "subsystem",
]
