import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum

from core.errors import (
    DimensionMismatchError,
    EmptyPolyhedronError,
    InfeasiblePointError,
    TagMismatchError,
)
from core.linalg import Scalar, as_vector, is_exact
from geometry import Polyhedron, contains, project

logger = logging.getLogger(__name__)


class SetTag(StrEnum):
    GENERIC = "generic"
    BOX_PAIR = "box_pair"
    OMEGA_E = "omega_E"
    OMEGA_V = "omega_V"
    OMEGA_S = "omega_S"


Bound = Scalar | None
Interval = tuple[Bound, Bound]


def box(intervals: Sequence[Interval]) -> Polyhedron:
    """Product of intervals; ``None`` stands for an infinite end."""
    dim = len(intervals)
    le, eq = [], []
    for k, (lo, hi) in enumerate(intervals):
        e = [0] * dim
        e[k] = 1
        minus = [-a for a in e]
        if lo is not None and hi is not None and lo == hi:
            eq.append((e, lo))
            continue
        if lo is not None and hi is not None and lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}] in coordinate {k}")
        if lo is not None:
            le.append((minus, -as_vector([lo])[0]))
        if hi is not None:
            le.append((e, hi))
    return Polyhedron.build(dim, le=le, eq=eq)


def box_intervals(C: Polyhedron) -> list[Interval]:
    """Inverse of ``box`` for polyhedra whose rows are signed unit vectors."""
    if not C.is_box():
        raise TagMismatchError("polyhedron is not a box")
    intervals: list[list[Bound]] = [[None, None] for _ in range(C.dim)]
    for c, alpha, kind in zip(C.normals, C.rhs, C.kinds):
        k = next(i for i, a in enumerate(c) if a != 0)
        bound = alpha / c[k]
        lo, hi = intervals[k]
        if kind == "eq" or c[k] > 0:
            intervals[k][1] = bound if hi is None else min(hi, bound)
        if kind == "eq" or c[k] < 0:
            intervals[k][0] = bound if lo is None else max(lo, bound)
    return [(lo, hi) for lo, hi in intervals]


_OMEGA_PIECES: dict[SetTag, tuple[Polyhedron, ...]] = {
    SetTag.OMEGA_E: (box([(0, None), (0, 0)]), box([(0, 0), (0, None)])),
    SetTag.OMEGA_V: (box([(None, 0), (0, None)]), box([(None, None), (0, 0)])),
    SetTag.OMEGA_S: (box([(None, None), (0, 0)]), box([(0, 0), (None, None)])),
}


@dataclass(frozen=True)
class DisjunctiveSet:
    """Finite union of polyhedra in a common ambient space."""

    pieces: tuple[Polyhedron, ...]
    tag: SetTag = SetTag.GENERIC

    def __post_init__(self) -> None:
        if not self.pieces:
            raise ValueError("a disjunctive set needs at least one piece")
        dims = {C.dim for C in self.pieces}
        if len(dims) != 1:
            raise DimensionMismatchError(f"pieces live in different dimensions: {sorted(dims)}")
        if self.tag in _OMEGA_PIECES and self.pieces != _OMEGA_PIECES[self.tag]:
            raise TagMismatchError(f"pieces do not match the {self.tag} closed form")
        if self.tag == SetTag.BOX_PAIR and (
            self.dim != 2 or not all(C.is_box() for C in self.pieces)
        ):
            raise TagMismatchError("box_pair sets are unions of boxes in R^2")

    @property
    def dim(self) -> int:
        return self.pieces[0].dim

    def __len__(self) -> int:
        return len(self.pieces)

    def is_ortho(self) -> bool:
        return self.tag != SetTag.GENERIC

    def __str__(self) -> str:
        if self.tag in _OMEGA_PIECES:
            return str(self.tag)
        return " U ".join(str(C) for C in self.pieces)


def omega_e() -> DisjunctiveSet:
    """R+ x {0} U {0} x R+, the complementarity set."""
    return DisjunctiveSet(_OMEGA_PIECES[SetTag.OMEGA_E], SetTag.OMEGA_E)


def omega_v() -> DisjunctiveSet:
    """R- x R+ U R x {0}, the vanishing-constraint set."""
    return DisjunctiveSet(_OMEGA_PIECES[SetTag.OMEGA_V], SetTag.OMEGA_V)


def omega_s() -> DisjunctiveSet:
    """R x {0} U {0} x R, the switching set."""
    return DisjunctiveSet(_OMEGA_PIECES[SetTag.OMEGA_S], SetTag.OMEGA_S)


OMEGA_FACTORIES = {SetTag.OMEGA_E: omega_e, SetTag.OMEGA_V: omega_v, SetTag.OMEGA_S: omega_s}


def boxes(*products: Sequence[Interval]) -> DisjunctiveSet:
    pieces = tuple(box(p) for p in products)
    tag = SetTag.BOX_PAIR if pieces and pieces[0].dim == 2 else SetTag.GENERIC
    return DisjunctiveSet(pieces, tag)


def _check_dim(gamma: DisjunctiveSet, x: Sequence[Scalar]) -> None:
    if len(x) != gamma.dim:
        raise DimensionMismatchError(f"point of dimension {len(x)} for a set in R^{gamma.dim}")


def active_pieces(gamma: DisjunctiveSet, x: Sequence[Scalar], tol: float = 0) -> list[int]:
    """Pieces within distance ``tol`` of ``x``; raises if there are none."""
    _check_dim(gamma, x)
    active = [
        r
        for r, C in enumerate(gamma.pieces)
        if contains(C, x) or (tol > 0 and project(C, x).distance <= tol)
    ]
    if not active:
        gap = distance(gamma, x)
        raise InfeasiblePointError(f"point is not in the set: distance {gap:.3g}", gap)
    return active


def distance(gamma: DisjunctiveSet, y: Sequence[Scalar]) -> float:
    _check_dim(gamma, y)
    return min(project(C, y).distance for C in gamma.pieces)


def nearest_piece(gamma: DisjunctiveSet, y: Sequence[Scalar]) -> int:
    """Lowest-index piece achieving the distance to ``y``."""
    _check_dim(gamma, y)
    if is_exact(y):
        squared = [_exact_sq_distance(C, y) for C in gamma.pieces]
    else:
        squared = [project(C, y).distance for C in gamma.pieces]
    best = min(squared)
    return squared.index(best)


def _exact_sq_distance(C: Polyhedron, y: Sequence[Scalar]) -> Scalar:
    z, _ = project(C, y)
    return sum((a - b) * (a - b) for a, b in zip(z, y))


def snap(gamma: DisjunctiveSet, y: Sequence[Scalar], tol: float) -> tuple[Scalar, ...]:
    """``y`` moved onto the set when it lies outside but within ``tol`` of it.

    The target is the closest common point of every piece within ``tol``,
    falling back to the nearest piece when those pieces do not meet close by.
    Float points and points already in the set come back unchanged.
    """
    _check_dim(gamma, y)
    if not is_exact(y):
        return tuple(y)
    y = as_vector(y)
    if any(contains(C, y) for C in gamma.pieces):
        return y
    near = [C for C in gamma.pieces if project(C, y).distance <= tol]
    if not near:
        gap = distance(gamma, y)
        raise InfeasiblePointError(f"point is not in the set: distance {gap:.3g}", gap)
    common = Polyhedron(
        gamma.dim,
        tuple(c for C in near for c in C.normals),
        tuple(a for C in near for a in C.rhs),
        tuple(k for C in near for k in C.kinds),
    )
    try:
        z, gap = project(common, y)
    except EmptyPolyhedronError:
        gap = math.inf
    if gap > tol:
        z, _ = project(gamma.pieces[nearest_piece(gamma, y)], y)
    logger.debug(f"snapped {y} onto {z} across {len(near)} pieces")
    return z
