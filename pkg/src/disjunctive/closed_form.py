"""Closed-form normal cones for unions of boxes.

For a union of boxes the regular normal cone at a nearby point splits
coordinatewise, so the strata are indexed by sign vectors s ∈ {-, 0, +}^p of
the displacement instead of by LP-realized row patterns.
"""

import logging
from collections.abc import Sequence
from fractions import Fraction
from itertools import product

from core.errors import InfeasiblePointError, TagMismatchError
from core.linalg import Vector, as_vector, unit
from disjunctive.limiting import LimitingGenerators, Stratum
from disjunctive.sets import OMEGA_FACTORIES, DisjunctiveSet, SetTag, box_intervals
from geometry import ConeGenerators, canonical

logger = logging.getLogger(__name__)

# Per-coordinate normal sets: the whole line, a half-line, or the origin.
LINE, UPPER, LOWER, ORIGIN = "R", "R+", "R-", "0"


def _coordinate_normal(lo, hi, value) -> str:
    at_lo = lo is not None and value == lo
    at_hi = hi is not None and value == hi
    if at_lo and at_hi:
        return LINE
    if at_hi:
        return UPPER
    if at_lo:
        return LOWER
    return ORIGIN


def _meet(a: str, b: str) -> str:
    if a == b or b == LINE:
        return a
    if a == LINE:
        return b
    return ORIGIN


def _step_allowed(lo, hi, value, sign: int) -> bool:
    if sign > 0:
        return hi is None or value < hi
    if sign < 0:
        return lo is None or value > lo
    return True


def _as_cone(dim: int, coords: Sequence[str]) -> ConeGenerators:
    rays, lines = [], []
    for k, kind in enumerate(coords):
        if kind == LINE:
            lines.append(unit(dim, k))
        elif kind == UPPER:
            rays.append(unit(dim, k))
        elif kind == LOWER:
            rays.append(unit(dim, k, -1))
    return canonical(ConeGenerators(dim, tuple(rays), tuple(lines)))


def _radius(boxes: list, y: Vector) -> Fraction:
    gaps = [
        abs(b - v)
        for intervals in boxes
        for (lo, hi), v in zip(intervals, y)
        for b in (lo, hi)
        if b is not None and b != v
    ]
    return min(gaps) / 2 if gaps else Fraction(1)


def closed_form_nc(gamma: DisjunctiveSet | SetTag, y: Sequence[object]) -> LimitingGenerators:
    """Limiting normal cone of a tagged union of boxes by sign-vector enumeration."""
    if isinstance(gamma, SetTag):
        if gamma not in OMEGA_FACTORIES:
            raise TagMismatchError(f"no closed form is attached to the tag {gamma}")
        gamma = OMEGA_FACTORIES[gamma]()
    if gamma.tag == SetTag.GENERIC:
        raise TagMismatchError("closed forms need a box_pair or omega tag")
    y = as_vector(y)
    dim = gamma.dim
    boxes = [box_intervals(C) for C in gamma.pieces]
    containing = [
        r
        for r, intervals in enumerate(boxes)
        if all(
            (lo is None or v >= lo) and (hi is None or v <= hi)
            for (lo, hi), v in zip(intervals, y)
        )
    ]
    if not containing:
        raise InfeasiblePointError(f"point is not in {gamma}")
    delta = _radius(boxes, y)
    t = delta / (dim + 1)

    seen: dict[ConeGenerators, Stratum] = {}
    for signs in product((-1, 0, 1), repeat=dim):
        occupied = [
            r
            for r in containing
            if all(_step_allowed(lo, hi, v, s) for (lo, hi), v, s in zip(boxes[r], y, signs))
        ]
        if not occupied:
            continue
        point = tuple(v + t * s for v, s in zip(y, signs))
        coords = [LINE] * dim
        for r in occupied:
            for k, ((lo, hi), v) in enumerate(zip(boxes[r], point)):
                coords[k] = _meet(coords[k], _coordinate_normal(lo, hi, v))
        cone = _as_cone(dim, coords)
        if cone not in seen:
            seen[cone] = Stratum(point, cone, tuple(occupied))
    logger.debug(f"closed-form cone at {y}: {len(seen)} strata")
    return LimitingGenerators.from_strata(dim, list(seen.values()), delta)
