"""Upper bounds on the distance to the feasible set.

The feasible set is the union of its subsystems, one per assignment of blocks to
pieces, so the distance is the smallest subsystem distance. Affine subsystems are
polyhedra in x-space and get projected exactly. The others go through a
Gauss–Newton restoration followed by an SLSQP polish; any feasible point found
bounds the distance from above.
"""

import logging
import math
from collections.abc import Sequence
from fractions import Fraction
from itertools import islice, product
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from core.errors import EmptyPolyhedronError
from core.linalg import Scalar, dot, transpose_apply
from expr import Expr, evaluate_gradient, jacobian
from geometry import Polyhedron, RowKind, project
from model import Partition, Program, nearest_partition, point
from schema import RunConfig

logger = logging.getLogger(__name__)


class Nearest(NamedTuple):
    distance: float
    point: tuple[Scalar, ...]
    partition: Partition | None


def _affine_parts(e: Expr) -> tuple[tuple[Fraction, ...], Fraction]:
    zero = (Fraction(0),) * e.dim
    return evaluate_gradient(e, zero), e(zero)


def is_affine(P: Program) -> bool:
    return all(e.is_affine() for e in (*P.g, *P.h)) and all(b.map.is_affine() for b in P.blocks)


def affine_polyhedron(P: Program, part: Partition) -> Polyhedron | None:
    """The subsystem feasible set as a polyhedron in x-space, or None when empty."""
    le: list[tuple[tuple[Fraction, ...], Fraction]] = []
    eq: list[tuple[tuple[Fraction, ...], Fraction]] = []
    for e in P.g:
        a, c = _affine_parts(e)
        le.append((a, -c))
    for e in P.h:
        a, c = _affine_parts(e)
        eq.append((a, -c))
    zero = (Fraction(0),) * P.dim
    for b, r in zip(P.blocks, part.assignment):
        M = jacobian(b.map, zero)
        m = b.map(zero)
        C = b.gamma.pieces[r]
        for c, alpha, kind in zip(C.normals, C.rhs, C.kinds):
            row = (transpose_apply(M, c), alpha - dot(c, m))
            (eq if kind == RowKind.EQ else le).append(row)
    kept_le, kept_eq = [], []
    for rows, kept, is_eq in ((le, kept_le, False), (eq, kept_eq, True)):
        for a, alpha in rows:
            if any(v != 0 for v in a):
                kept.append((a, alpha))
            elif (alpha != 0) if is_eq else (alpha < 0):
                return None
    return Polyhedron.build(P.dim, le=kept_le, eq=kept_eq)


class SubsystemConstraints:
    """le(z) ≤ 0 and eq(z) = 0 in floats for one subsystem."""

    def __init__(self, P: Program, part: Partition) -> None:
        self.P = P
        self.rows = []
        for b, r in zip(P.blocks, part.assignment):
            C = b.gamma.pieces[r]
            for c, alpha, kind in zip(C.normals, C.rhs, C.kinds):
                normal = np.array([float(v) for v in c])
                self.rows.append((b.map, normal, float(alpha), kind))

    def values(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        x = tuple(float(v) for v in z)
        le = [float(e(x)) for e in self.P.g]
        eq = [float(e(x)) for e in self.P.h]
        for F, normal, alpha, kind in self.rows:
            value = float(normal @ np.array(F(x), dtype=float)) - alpha
            (eq if kind == RowKind.EQ else le).append(value)
        return np.array(le), np.array(eq)

    def jacobians(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        x = tuple(float(v) for v in z)
        le = [np.array(evaluate_gradient(e, x), dtype=float) for e in self.P.g]
        eq = [np.array(evaluate_gradient(e, x), dtype=float) for e in self.P.h]
        for F, normal, _, kind in self.rows:
            row = normal @ np.array(jacobian(F, x), dtype=float)
            (eq if kind == RowKind.EQ else le).append(row)
        n = self.P.dim
        return np.array(le).reshape(-1, n), np.array(eq).reshape(-1, n)

    def violation(self, z: np.ndarray) -> float:
        le, eq = self.values(z)
        worst = float(np.max(le, initial=0.0))
        return max(worst, float(np.max(np.abs(eq), initial=0.0)))


def restore(con: SubsystemConstraints, z0: np.ndarray, tol: float, max_iter: int):
    """Least-norm Gauss–Newton steps on the violated rows until feasible."""
    z = z0.copy()
    for _ in range(max_iter):
        le, eq = con.values(z)
        mask = le > 0
        r = np.concatenate([le[mask], eq])
        if r.size == 0 or float(np.max(np.abs(r))) <= tol:
            return z
        J_le, J_eq = con.jacobians(z)
        J = np.vstack([J_le[mask], J_eq])
        step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        if not np.all(np.isfinite(step)):
            return None
        z = z + step
    return None


def polish(con: SubsystemConstraints, x: np.ndarray, z0: np.ndarray, tol: float, max_iter: int):
    """SLSQP on ‖z − x‖² from a feasible start; keeps the start if SLSQP wanders off."""
    constraints = []
    le0, eq0 = con.values(z0)
    if le0.size:
        constraints.append(
            {
                "type": "ineq",
                "fun": lambda z: -con.values(z)[0],
                "jac": lambda z: -con.jacobians(z)[0],
            }
        )
    if eq0.size:
        constraints.append(
            {"type": "eq", "fun": lambda z: con.values(z)[1], "jac": lambda z: con.jacobians(z)[1]}
        )
    result = minimize(
        lambda z: 0.5 * float(np.sum((z - x) ** 2)),
        z0,
        jac=lambda z: z - x,
        constraints=constraints,
        method="SLSQP",
        options={"ftol": 1e-14, "maxiter": max_iter},
    )
    z = result.x
    if con.violation(z) <= tol and np.sum((z - x) ** 2) < np.sum((z0 - x) ** 2):
        return z
    return z0


def _local_search(
    P: Program, part: Partition, x: Sequence[Scalar], config: RunConfig, rng: np.random.Generator
) -> tuple[float, tuple[float, ...]] | None:
    con = SubsystemConstraints(P, part)
    y = np.array([float(v) for v in x])
    tol = config.feas_tol_float
    spread = max(con.violation(y), 1e-3)
    starts = [y] + [y + spread * rng.standard_normal(P.dim) for _ in range(config.eb_starts - 1)]
    best: tuple[float, tuple[float, ...]] | None = None
    for z0 in starts:
        z = restore(con, z0, tol, config.eb_max_iter)
        if z is None:
            continue
        z = polish(con, y, z, tol, config.eb_max_iter)
        d = float(np.linalg.norm(z - y))
        if best is None or d < best[0]:
            best = (d, tuple(float(v) for v in z))
    return best


def _partitions(P: Program, x: Sequence[Scalar], cap: int) -> list[Partition]:
    first = nearest_partition(P, x)
    every = (Partition(a) for a in product(*(range(len(b.gamma)) for b in P.blocks)))
    rest = (p for p in every if p != first)
    return [first, *islice(rest, cap - 1)]


def nearest_feasible(
    P: Program,
    x: Sequence[object],
    config: RunConfig | None = None,
    anchor: Sequence[object] | None = None,
    seed: int | None = None,
) -> Nearest:
    """A feasible point near ``x`` and its Euclidean distance.

    ``anchor`` is a known feasible point used when every subsystem search fails.
    """
    config = config or RunConfig.from_settings()
    x = point(x)
    rng = np.random.default_rng(config.seed if seed is None else seed)
    affine = is_affine(P)
    best: Nearest | None = None
    for part in _partitions(P, x, config.candidate_cap):
        if affine:
            C = affine_polyhedron(P, part)
            if C is None:
                continue
            try:
                z, d = project(C, x)
            except EmptyPolyhedronError:
                continue
        else:
            found = _local_search(P, part, x, config, rng)
            if found is None:
                continue
            d, z = found
        if best is None or d < best.distance:
            best = Nearest(d, z, part)
    if best is None:
        if anchor is None:
            logger.warning("no feasible point found near the sample")
            return Nearest(math.inf, tuple(x), None)
        a = point(anchor)
        d = math.sqrt(sum(float(u - v) ** 2 for u, v in zip(a, x)))
        logger.debug(f"falling back to the anchor at distance {d:.3g}")
        return Nearest(d, a, None)
    return best


def feasible_distance(
    P: Program, x: Sequence[object], config: RunConfig | None = None, seed: int | None = None
) -> float:
    """Upper bound on the Euclidean distance from ``x`` to the feasible set."""
    return nearest_feasible(P, x, config, seed=seed).distance
