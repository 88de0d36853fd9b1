"""Euclidean projection onto a polyhedron."""

import logging
import math
from collections.abc import Sequence
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from core.errors import DimensionMismatchError, EmptyPolyhedronError
from core.linalg import Scalar, add, dot, independent_indices, is_exact, solve_least_norm, sub
from core.settings import settings
from geometry.polyhedron import Polyhedron, RowKind

logger = logging.getLogger(__name__)

# Above this many inequality rows the subset enumeration gives way to SLSQP.
MAX_ENUMERATED_ROWS = 12


class Projection(NamedTuple):
    point: tuple[Scalar, ...]
    distance: float


def _norm(v: Sequence[Scalar]) -> float:
    if is_exact(v):
        return math.sqrt(sum((a * a for a in v), Fraction(0)))
    return math.hypot(*(float(a) for a in v))


def _clamp_box(C: Polyhedron, y: Sequence[Scalar]) -> tuple[Scalar, ...]:
    lower: list[Scalar | None] = [None] * C.dim
    upper: list[Scalar | None] = [None] * C.dim
    for c, alpha, kind in zip(C.normals, C.rhs, C.kinds):
        k = next(i for i, a in enumerate(c) if a != 0)
        bound = alpha / c[k]
        is_upper = c[k] > 0
        if kind == RowKind.EQ or is_upper:
            upper[k] = bound if upper[k] is None else min(upper[k], bound)
        if kind == RowKind.EQ or not is_upper:
            lower[k] = bound if lower[k] is None else max(lower[k], bound)
    z = []
    for k, v in enumerate(y):
        lo, hi = lower[k], upper[k]
        if lo is not None and hi is not None and lo > hi:
            raise EmptyPolyhedronError(f"box is empty in coordinate {k}")
        if lo is not None and v < lo:
            v = lo
        if hi is not None and v > hi:
            v = hi
        z.append(v)
    return tuple(z)


def _project_exact(C: Polyhedron, y: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    eq_rows = [C.normals[j] for j in C.equalities]
    eq_keep = [C.equalities[j] for j in independent_indices(eq_rows)]
    best: tuple[Fraction, ...] | None = None
    best_sq: Fraction | None = None
    for size in range(0, C.dim - len(eq_keep) + 1):
        for subset in combinations(C.inequalities, size):
            rows_idx = [*eq_keep, *subset]
            rows = [C.normals[j] for j in rows_idx]
            if len(independent_indices(rows)) < len(rows):
                continue
            if rows:
                residual = [C.rhs[j] - dot(C.normals[j], y) for j in rows_idx]
                step = solve_least_norm(rows, residual)
                z = add(y, step)
            else:
                z = y
            if C.violation(z) > 0:
                continue
            sq = sum((a * a for a in sub(z, y)), Fraction(0))
            if best_sq is None or sq < best_sq:
                best, best_sq = z, sq
    if best is None:
        raise EmptyPolyhedronError(f"no point of {C} found")
    return best


def _project_float(C: Polyhedron, y: np.ndarray, tol: float) -> np.ndarray:
    A = np.array([[float(a) for a in c] for c in C.normals], dtype=float).reshape(-1, C.dim)
    b = np.array([float(a) for a in C.rhs], dtype=float)
    eqs, les = C.equalities, C.inequalities
    if len(les) > MAX_ENUMERATED_ROWS:
        return _project_slsqp(A, b, eqs, les, y, tol)
    best, best_sq = None, math.inf
    for size in range(0, C.dim - len(eqs) + 1):
        for subset in combinations(les, size):
            rows = [*eqs, *subset]
            if rows:
                M = A[rows]
                if np.linalg.matrix_rank(M) < len(rows) and subset:
                    continue
                step, *_ = np.linalg.lstsq(M, b[rows] - M @ y, rcond=None)
                z = y + step
            else:
                z = y.copy()
            if C.violation(tuple(z)) > tol:
                continue
            sq = float(np.sum((z - y) ** 2))
            if sq < best_sq:
                best, best_sq = z, sq
    if best is None:
        raise EmptyPolyhedronError(f"no point of {C} found")
    return best


def _project_slsqp(A, b, eqs, les, y: np.ndarray, tol: float) -> np.ndarray:
    logger.debug(f"projecting with SLSQP over {len(les)} inequality rows")
    A_le, b_le, A_eq, b_eq = A[les], b[les], A[eqs], b[eqs]
    constraints = [
        {"type": "ineq", "fun": lambda z: b_le - A_le @ z, "jac": lambda z: -A_le},
    ]
    if eqs:
        constraints.append({"type": "eq", "fun": lambda z: b_eq - A_eq @ z, "jac": lambda z: -A_eq})
    result = minimize(
        lambda z: 0.5 * float(np.sum((z - y) ** 2)),
        y,
        jac=lambda z: z - y,
        constraints=constraints,
        method="SLSQP",
        options={"ftol": 1e-14, "maxiter": 500},
    )
    z = result.x
    violation = max(0.0, float(np.max(A_le @ z - b_le)))
    if eqs:
        violation = max(violation, float(np.max(np.abs(A_eq @ z - b_eq))))
    if not result.success or violation > tol:
        raise EmptyPolyhedronError(f"SLSQP projection failed: {result.message}")
    return z


def project(C: Polyhedron, y: Sequence[Scalar]) -> Projection:
    """Closest point of ``C`` to ``y`` and its Euclidean distance.

    Exact rational input is projected exactly by enumerating independent sets of
    rows assumed active; float input follows the same enumeration in numpy.
    """
    if len(y) != C.dim:
        raise DimensionMismatchError(f"point of dimension {len(y)} for a set in R^{C.dim}")
    exact = is_exact(y)
    if C.is_box():
        z = _clamp_box(C, y)
        if not exact:
            z = tuple(float(v) for v in z)
    elif exact:
        z = _project_exact(C, tuple(Fraction(v) for v in y))
    else:
        found = _project_float(C, np.array(y, dtype=float), settings.FEAS_TOL_FLOAT)
        z = tuple(float(v) for v in found)
    diff = [a - b for a, b in zip(z, y)]
    return Projection(tuple(z), _norm(diff))
