from core.errors import (
    DimensionMismatchError,
    EmptyPolyhedronError,
    InfeasiblePointError,
    MissingObjectiveError,
    RepresentationError,
    TagMismatchError,
    UnknownCqError,
    VerificationError,
)
from core.settings import settings

__all__ = [
    "settings",
    "VerificationError",
    "DimensionMismatchError",
    "EmptyPolyhedronError",
    "InfeasiblePointError",
    "MissingObjectiveError",
    "RepresentationError",
    "TagMismatchError",
    "UnknownCqError",
]
