"""Regular and limiting normal cones of finite unions of polyhedra.

Near a base point x̄ every piece containing x̄ looks like its tangent cone, and
pieces missing x̄ are out of reach. The regular normal cone is constant on the
strata cut out by which rows of which pieces are tight, so the limiting cone is
the union of the regular cones over the strata realizable in a small ball.
"""

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from core.linalg import Vector, as_vector, is_independent, neg, primitive, sign_normalized
from core.lp import solve_lp
from disjunctive.sets import DisjunctiveSet, active_pieces
from geometry import ConeGenerators, canonical, cone_member, intersect, normal_cone

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Stratum:
    point: Vector
    cone: ConeGenerators
    pieces: tuple[int, ...]


@dataclass(frozen=True)
class LimitingGenerators:
    dim: int
    rays: tuple[Vector, ...]
    lines: tuple[Vector, ...]
    strata: tuple[Stratum, ...] = field(default=())
    radius: Fraction = Fraction(1)

    @classmethod
    def from_strata(
        cls, dim: int, strata: Sequence[Stratum], radius: Fraction = Fraction(1)
    ) -> "LimitingGenerators":
        strata = sorted(strata, key=lambda s: (s.cone.lines, s.cone.rays))
        rays = sorted({primitive(r) for s in strata for r in s.cone.rays})
        lines = sorted({sign_normalized(v) for s in strata for v in s.cone.lines})
        return cls(dim, tuple(rays), tuple(lines), tuple(strata), radius)

    @property
    def cones(self) -> list[ConeGenerators]:
        return [s.cone for s in self.strata]

    def stratum_set(self) -> set[ConeGenerators]:
        return {s.cone for s in self.strata}


def regular_nc(gamma: DisjunctiveSet, x: Sequence[object], tol: float = 0) -> ConeGenerators:
    """Intersection of the normal cones of the pieces containing ``x``."""
    active = active_pieces(gamma, x, tol)
    return intersect(*(normal_cone(gamma.pieces[r], x, tol) for r in active))


def piece_normal_cones(
    gamma: DisjunctiveSet, x: Sequence[object], tol: float = 0
) -> dict[int, ConeGenerators]:
    return {r: normal_cone(gamma.pieces[r], x, tol) for r in active_pieces(gamma, x, tol)}


def stratum_radius(gamma: DisjunctiveSet, x: Vector) -> Fraction:
    """Half the smallest ℓ₁-scaled slack over rows not tight at x; 1 when all are tight."""
    ratios = []
    for C in gamma.pieces:
        for j, c in enumerate(C.normals):
            s = C.slack(j, x)
            if s != 0:
                ratios.append(abs(s) / sum(abs(a) for a in c))
    return min(ratios) / 2 if ratios else Fraction(1)


@dataclass(frozen=True)
class _Pattern:
    """Sign pattern of a direction d against the rows of the active pieces."""

    zero: tuple[Vector, ...]
    negative: tuple[Vector, ...]
    positive: tuple[Vector, ...]
    occupied: tuple[int, ...]


def _piece_patterns(C, x: Vector) -> Iterator[tuple[bool, list, list, list]]:
    tight = [C.normals[j] for j in C.inequalities if C.slack(j, x) == 0]
    equalities = [C.normals[j] for j in C.equalities]
    for size in range(len(tight) + 1):
        for Z in combinations(range(len(tight)), size):
            zero = [tight[j] for j in Z] + equalities
            negative = [tight[j] for j in range(len(tight)) if j not in Z]
            yield True, zero, negative, []
    for a in tight:
        yield False, [], [], [a]
    for b in equalities:
        yield False, [], [], [b]
        yield False, [], [], [neg(b)]


def _patterns(gamma: DisjunctiveSet, x: Vector, active: list[int]) -> Iterator[_Pattern]:
    per_piece = [list(_piece_patterns(gamma.pieces[r], x)) for r in active]
    for choice in product(*per_piece):
        occupied = tuple(r for r, (occ, *_) in zip(active, choice) if occ)
        if not occupied:
            continue
        yield _Pattern(
            zero=tuple(v for _, z, _, _ in choice for v in z),
            negative=tuple(v for _, _, n, _ in choice for v in n),
            positive=tuple(v for _, _, _, p in choice for v in p),
            occupied=occupied,
        )


def _realize(pattern: _Pattern, dim: int) -> Vector | None:
    """A direction in [-1, 1]^dim realizing the pattern with strict signs, or None."""
    # variables: d (free, boxed) then the slack s ≤ 1; maximize s
    n = dim + 1
    A_ub, b_ub = [], []
    for a in pattern.negative:
        A_ub.append([*a, 1])
        b_ub.append(0)
    for a in pattern.positive:
        A_ub.append([*(-v for v in a), 1])
        b_ub.append(0)
    for k in range(dim):
        row = [0] * n
        row[k] = 1
        A_ub.append(row)
        b_ub.append(1)
        A_ub.append([-v for v in row])
        b_ub.append(1)
    A_ub.append([0] * dim + [1])
    b_ub.append(1)
    A_eq = [[*a, 0] for a in pattern.zero]
    result = solve_lp(
        [0] * dim + [-1],
        A_ub=A_ub,
        b_ub=b_ub,
        A_eq=A_eq,
        b_eq=[0] * len(A_eq),
        free=[True] * n,
    )
    if not result.success or result.x[dim] <= 0:
        return None
    return result.x[:dim]


def limiting_nc(gamma: DisjunctiveSet, x: Sequence[object], tol: float = 0) -> LimitingGenerators:
    """Limiting normal cone at ``x``, one stratum per distinct nearby regular cone."""
    x = as_vector(x)
    active = active_pieces(gamma, x, tol)
    delta = stratum_radius(gamma, x)
    seen: dict[ConeGenerators, Stratum] = {}
    realized: set[tuple] = set()
    tried = 0
    for pattern in _patterns(gamma, x, active):
        key = (pattern.occupied, frozenset(pattern.zero))
        if key in realized:
            continue
        tried += 1
        d = _realize(pattern, gamma.dim)
        if d is None:
            continue
        realized.add(key)
        t = delta / (sum(abs(v) for v in d) + 1)
        point = tuple(a + t * b for a, b in zip(x, d))
        cone = canonical(regular_nc(gamma, point))
        if cone not in seen:
            seen[cone] = Stratum(point, cone, pattern.occupied)
    logger.debug(f"limiting cone: {tried} sign-pattern LPs, {len(seen)} strata, radius {delta}")
    return LimitingGenerators.from_strata(gamma.dim, list(seen.values()), delta)


def limiting_member(gamma: DisjunctiveSet, x: Sequence[object], v: Sequence[object]) -> bool:
    return any(cone_member(s.cone, v) for s in limiting_nc(gamma, x).strata)


def member_of(generators: LimitingGenerators, v: Sequence[object]) -> bool:
    return any(cone_member(s.cone, v) for s in generators.strata)


@dataclass(frozen=True)
class Family:
    """A generator pair (A^I, A^E) with linearly independent members."""

    rays: tuple[Vector, ...] = ()
    lines: tuple[Vector, ...] = ()

    @property
    def size(self) -> int:
        return len(self.rays) + len(self.lines)

    def as_cone(self, dim: int) -> ConeGenerators:
        return ConeGenerators(dim, self.rays, self.lines)


def _inside(family: Family, cone: ConeGenerators) -> bool:
    return all(cone_member(cone, r) for r in family.rays) and all(
        cone_member(cone, v) and cone_member(cone, neg(v)) for v in family.lines
    )


def admissible_families(generators: LimitingGenerators) -> list[Family]:
    """Independent generator pairs whose cone lies inside a single stratum cone.

    The empty family comes first; the rest are ordered by size.
    """
    dim = generators.dim
    families = [Family()]
    for size in range(1, dim + 1):
        for n_lines in range(size + 1):
            for lines in combinations(generators.lines, n_lines):
                for rays in combinations(generators.rays, size - n_lines):
                    if not is_independent([*rays, *lines]):
                        continue
                    family = Family(rays, lines)
                    if any(_inside(family, s.cone) for s in generators.strata):
                        families.append(family)
    return families


def uncovered_generators(
    generators: LimitingGenerators, pieces: dict[int, ConeGenerators]
) -> list[Vector]:
    """Limiting generators that are not generators of any active piece's normal cone.

    Rays match piece rays up to positive scaling or piece lines up to sign;
    lines match piece lines up to sign.
    """
    piece_rays = {primitive(r) for c in pieces.values() for r in c.rays}
    piece_lines = {sign_normalized(v) for c in pieces.values() for v in c.lines}
    missing = []
    for r in generators.rays:
        if primitive(r) not in piece_rays and sign_normalized(r) not in piece_lines:
            missing.append(r)
    for v in generators.lines:
        if sign_normalized(v) not in piece_lines:
            missing.append(v)
    return missing
