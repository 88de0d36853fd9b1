"""Finitely generated cones: exact double description, membership and canonical forms."""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import cdd

from core.errors import DimensionMismatchError
from core.linalg import (
    Vector,
    as_vector,
    dot,
    format_vector,
    independent_indices,
    is_independent,
    is_zero,
    neg,
    primitive,
    project_out,
    rank,
    rref,
    sign_normalized,
)
from core.lp import solve_lp
from geometry.polyhedron import Polyhedron, active_set

logger = logging.getLogger(__name__)

# cdd works in exact rational arithmetic throughout
NUMBER_TYPE = "fraction"


@dataclass(frozen=True)
class ConeGenerators:
    """cone(rays) + span(lines) in R^dim."""

    dim: int
    rays: tuple[Vector, ...] = ()
    lines: tuple[Vector, ...] = ()

    def __post_init__(self) -> None:
        for v in (*self.rays, *self.lines):
            if len(v) != self.dim:
                raise DimensionMismatchError(
                    f"generator {format_vector(v)} is not in R^{self.dim}"
                )

    @classmethod
    def of(
        cls, dim: int, rays: Iterable[Sequence[object]] = (), lines: Iterable[Sequence[object]] = ()
    ) -> "ConeGenerators":
        return cls(dim, tuple(as_vector(r) for r in rays), tuple(as_vector(v) for v in lines))

    @property
    def generators(self) -> tuple[Vector, ...]:
        return self.rays + self.lines

    @property
    def independent(self) -> bool:
        return is_independent(self.generators)

    def is_trivial(self) -> bool:
        return all(is_zero(v) for v in self.generators)

    def __str__(self) -> str:
        parts = []
        if self.rays:
            parts.append("cone{" + ", ".join(format_vector(r) for r in self.rays) + "}")
        if self.lines:
            parts.append("span{" + ", ".join(format_vector(v) for v in self.lines) + "}")
        return " + ".join(parts) if parts else "{0}"


@dataclass(frozen=True)
class HalfspaceSystem:
    """{v : ⟨a, v⟩ ≤ 0 for a in inequalities, ⟨b, v⟩ = 0 for b in equalities}."""

    dim: int
    inequalities: tuple[Vector, ...] = ()
    equalities: tuple[Vector, ...] = ()

    def contains(self, v: Sequence[Fraction]) -> bool:
        return all(dot(a, v) <= 0 for a in self.inequalities) and all(
            dot(b, v) == 0 for b in self.equalities
        )


def cone_member(g: ConeGenerators, v: Sequence[object]) -> bool:
    """Exact test of v ∈ cone(rays) + span(lines) by a feasibility LP."""
    v = as_vector(v)
    if len(v) != g.dim:
        raise DimensionMismatchError(f"vector of dimension {len(v)} for a cone in R^{g.dim}")
    if is_zero(v):
        return True
    gens = [r for r in g.rays if not is_zero(r)] + [w for w in g.lines if not is_zero(w)]
    if not gens:
        return False
    n_rays = sum(1 for r in g.rays if not is_zero(r))
    A_eq = [[w[k] for w in gens] for k in range(g.dim)]
    free = [False] * n_rays + [True] * (len(gens) - n_rays)
    return solve_lp([0] * len(gens), A_eq=A_eq, b_eq=list(v), free=free).success


def _in_span(v: Sequence[Fraction], basis: Sequence[Sequence[Fraction]]) -> bool:
    return rank([*basis, v]) == len(basis) if basis else is_zero(v)


def reduce_generators(
    dim: int, rays: Iterable[Sequence[Fraction]], lines: Iterable[Sequence[Fraction]]
) -> ConeGenerators:
    """Same cone with a lineality basis and an irredundant ray list.

    Rays whose negation lies in the cone become lines; the surviving rays keep
    their original scaling and order.
    """
    lines = [tuple(w) for w in lines if not is_zero(w)]
    lines = [lines[i] for i in independent_indices(lines)]
    kept: list[Vector] = []
    for r in rays:
        r = tuple(r)
        if not is_zero(r) and r not in kept:
            kept.append(r)

    promoted = True
    while promoted:
        promoted = False
        kept = [r for r in kept if not _in_span(r, lines)]
        for r in kept:
            if cone_member(ConeGenerators(dim, tuple(kept), tuple(lines)), neg(r)):
                lines.append(r)
                promoted = True
                break

    for r in list(kept):
        others = tuple(w for w in kept if w != r)
        if cone_member(ConeGenerators(dim, others, tuple(lines)), r):
            kept.remove(r)
    return ConeGenerators(dim, tuple(kept), tuple(lines))


def canonical(g: ConeGenerators) -> ConeGenerators:
    """Unique representative of the cone.

    Lines form the reduced echelon basis of the lineality space scaled to
    primitive integer vectors; rays are the extreme rays of the pointed part,
    projected onto the orthogonal complement of the lineality space, primitive
    and sorted.
    """
    reduced = reduce_generators(g.dim, g.rays, g.lines)
    basis, _ = rref(reduced.lines)
    lines = tuple(sign_normalized(row) for row in basis)
    rays = {primitive(project_out(r, basis)) for r in reduced.rays}
    rays.discard(tuple(Fraction(0) for _ in range(g.dim)))
    return ConeGenerators(g.dim, tuple(sorted(rays)), lines)


def cones_equal(a: ConeGenerators, b: ConeGenerators) -> bool:
    if a.dim != b.dim:
        return False
    return canonical(a) == canonical(b)


def _cdd_matrix(
    rows: Sequence[Sequence[object]], linear: Sequence[Sequence[object]], kind: cdd.RepType
) -> cdd.Matrix:
    if not rows:
        mat = cdd.Matrix(linear, linear=True, number_type=NUMBER_TYPE)
    else:
        mat = cdd.Matrix(rows, number_type=NUMBER_TYPE)
        if linear:
            mat.extend(linear, linear=True)
    mat.rep_type = kind
    return mat


def _split(mat: cdd.Matrix) -> tuple[list[Vector], list[Vector]]:
    """Output rows split into plain and linearity vectors, without the constant column."""
    plain, linear = [], []
    for i in range(mat.row_size):
        row = as_vector(mat[i])
        if row[0] != 0:
            # the origin as a vertex, or the trivial inequality 1 >= 0
            continue
        if is_zero(row[1:]):
            continue
        (linear if i in mat.lin_set else plain).append(row[1:])
    return plain, linear


def dd_hrep_to_vrep(system: HalfspaceSystem) -> ConeGenerators:
    """Generators of a homogeneous system by the double description method."""
    dim = system.dim
    if not system.inequalities and not system.equalities:
        units = [tuple(Fraction(int(i == k)) for i in range(dim)) for k in range(dim)]
        return canonical(ConeGenerators(dim, (), tuple(units)))
    # cdd rows [b, c] stand for b + <c, v> >= 0
    mat = _cdd_matrix(
        [[0, *neg(a)] for a in system.inequalities],
        [[0, *neg(b)] for b in system.equalities],
        cdd.RepType.INEQUALITY,
    )
    rays, lines = _split(cdd.Polyhedron(mat).get_generators())
    logger.debug(f"DD: {len(system.inequalities)} inequalities to {len(rays)} rays")
    return canonical(ConeGenerators(dim, tuple(rays), tuple(lines)))


def dd_vrep_to_hrep(g: ConeGenerators) -> HalfspaceSystem:
    """Facet description of a generated cone."""
    origin = [1] + [0] * g.dim
    mat = _cdd_matrix(
        [origin, *([0, *r] for r in g.rays)],
        [[0, *w] for w in g.lines],
        cdd.RepType.GENERATOR,
    )
    facets, equations = _split(cdd.Polyhedron(mat).get_inequalities())
    basis, _ = rref(equations)
    return HalfspaceSystem(
        g.dim,
        tuple(sorted({primitive(neg(c)) for c in facets})),
        tuple(sign_normalized(row) for row in basis),
    )


def intersect(*cones: ConeGenerators) -> ConeGenerators:
    if not cones:
        raise ValueError("intersect needs at least one cone")
    dims = {c.dim for c in cones}
    if len(dims) != 1:
        raise DimensionMismatchError(f"cones live in different dimensions: {sorted(dims)}")
    dim = dims.pop()
    if len(cones) == 1:
        return canonical(cones[0])
    inequalities: list[Vector] = []
    equalities: list[Vector] = []
    for c in cones:
        h = dd_vrep_to_hrep(c)
        inequalities.extend(h.inequalities)
        equalities.extend(h.equalities)
    return dd_hrep_to_vrep(HalfspaceSystem(dim, tuple(inequalities), tuple(equalities)))


def normal_cone(C: Polyhedron, x: Sequence[object], tol: float = 0) -> ConeGenerators:
    """N_C(x) generated by the active inequality normals and the equality normals."""
    x = tuple(x)
    active = active_set(C, x, tol)
    rays = [C.normals[j] for j in active]
    lines = [C.normals[j] for j in C.equalities]
    reduced = reduce_generators(C.dim, rays, lines)
    if not reduced.independent:
        logger.debug(f"normal cone at {x} has no independent generator pair: {reduced}")
    return reduced
