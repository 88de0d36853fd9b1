import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from enum import StrEnum
from itertools import product

from core.errors import DimensionMismatchError, InfeasiblePointError
from core.linalg import Scalar, as_vector, is_exact
from core.settings import NormKind, settings
from disjunctive import DisjunctiveSet, SetTag, active_pieces, distance, nearest_piece, snap
from expr import Expr, VectorFunc

logger = logging.getLogger(__name__)

Point = tuple[Scalar, ...]


class OrthoKind(StrEnum):
    MPEC = "mpec"
    MPVC = "mpvc"
    MPSC = "mpsc"

    @property
    def tag(self) -> SetTag:
        return {
            OrthoKind.MPEC: SetTag.OMEGA_E,
            OrthoKind.MPVC: SetTag.OMEGA_V,
            OrthoKind.MPSC: SetTag.OMEGA_S,
        }[self]


@dataclass(frozen=True)
class Block:
    """One disjunctive constraint Φ(x) ∈ Γ."""

    map: VectorFunc
    gamma: DisjunctiveSet

    def __post_init__(self) -> None:
        if self.map.output_dim != self.gamma.dim:
            raise DimensionMismatchError(
                f"block map has {self.map.output_dim} components but the set lives in "
                f"R^{self.gamma.dim}"
            )


@dataclass(frozen=True)
class Program:
    """g(x) ≤ 0, h(x) = 0 and Φ_i(x) ∈ Γ_i over the variables ``variables``."""

    variables: tuple[str, ...]
    g: tuple[Expr, ...] = ()
    h: tuple[Expr, ...] = ()
    blocks: tuple[Block, ...] = ()
    objective: Expr | None = None

    def __post_init__(self) -> None:
        exprs = [*self.g, *self.h, *(c for b in self.blocks for c in b.map.components)]
        if self.objective is not None:
            exprs.append(self.objective)
        for e in exprs:
            if e.variables != self.variables:
                raise DimensionMismatchError(
                    f"expression {e} is over {e.variables}, expected {self.variables}"
                )

    @property
    def dim(self) -> int:
        return len(self.variables)

    def with_objective(self, objective: Expr | None) -> "Program":
        return replace(self, objective=objective)

    def __str__(self) -> str:
        lines = [f"vars {', '.join(self.variables)}"]
        lines += [f"  g{i + 1}: {e} <= 0" for i, e in enumerate(self.g)]
        lines += [f"  h{i + 1}: {e} = 0" for i, e in enumerate(self.h)]
        lines += [f"  block {i + 1}: {b.map} in {b.gamma}" for i, b in enumerate(self.blocks)]
        return "\n".join(lines)


@dataclass(frozen=True)
class OrthoProgram:
    """g, h plus pairs (G_i, H_i) constrained to the Ω set of ``kind``."""

    variables: tuple[str, ...]
    kind: OrthoKind
    G: tuple[Expr, ...]
    H: tuple[Expr, ...]
    g: tuple[Expr, ...] = ()
    h: tuple[Expr, ...] = ()
    objective: Expr | None = None

    def __post_init__(self) -> None:
        if len(self.G) != len(self.H):
            raise DimensionMismatchError(f"{len(self.G)} G functions but {len(self.H)} H functions")
        for e in (*self.g, *self.h, *self.G, *self.H):
            if e.variables != self.variables:
                raise DimensionMismatchError(
                    f"expression {e} is over {e.variables}, expected {self.variables}"
                )

    @property
    def dim(self) -> int:
        return len(self.variables)

    @property
    def pairs(self) -> int:
        return len(self.G)


@dataclass(frozen=True)
class Partition:
    """Piece index chosen for each block."""

    assignment: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.assignment)

    def __str__(self) -> str:
        pairs = (f"block {i + 1} -> piece {r + 1}" for i, r in enumerate(self.assignment))
        return "[" + ", ".join(pairs) + "]"


@dataclass(frozen=True)
class Residual:
    g_plus_norm: Scalar
    h_norm: Scalar
    gamma_dists: tuple[float, ...]
    norm: NormKind = NormKind.L1
    total: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "total", self.g_plus_norm + self.h_norm + sum(self.gamma_dists)
        )


def point(x: Sequence[object]) -> Point:
    """Rational point unless some coordinate is a float."""
    if any(isinstance(v, float) for v in x):
        return tuple(float(v) for v in x)
    return as_vector(x)


def norm(values: Sequence[Scalar], kind: NormKind) -> Scalar:
    if not values:
        return 0
    if kind == NormKind.L1:
        return sum(abs(v) for v in values)
    if kind == NormKind.LINF:
        return max(abs(v) for v in values)
    return math.sqrt(sum(float(v) * float(v) for v in values))


def _check_point(P: Program, x: Sequence[object]) -> Point:
    if len(x) != P.dim:
        raise DimensionMismatchError(f"point of dimension {len(x)} for a program in R^{P.dim}")
    return point(x)


def default_tol(x: Sequence[object]) -> float:
    return settings.FEAS_TOL if is_exact(x) else settings.FEAS_TOL_FLOAT


def residual(P: Program, x: Sequence[object], kind: NormKind | None = None) -> Residual:
    """‖g⁺(x)‖ + ‖h(x)‖ + Σ d_Γi(Φ_i(x)) in the chosen norm (default from settings)."""
    x = _check_point(P, x)
    kind = kind or settings.NORM
    g_plus = [max(e(x), 0) for e in P.g]
    h_vals = [e(x) for e in P.h]
    dists = tuple(distance(b.gamma, b.map(x)) for b in P.blocks)
    return Residual(norm(g_plus, kind), norm(h_vals, kind), dists, kind)


def is_feasible(P: Program, x: Sequence[object], tol: float | None = None) -> bool:
    x = _check_point(P, x)
    tol = default_tol(x) if tol is None else tol
    return residual(P, x).total <= tol


def require_feasible(P: Program, x: Sequence[object], tol: float | None = None) -> Point:
    x = _check_point(P, x)
    tol = default_tol(x) if tol is None else tol
    total = residual(P, x).total
    if total > tol:
        raise InfeasiblePointError(
            f"point is infeasible: residual {float(total):.3g} exceeds {tol:.1g}", float(total)
        )
    return x


def active_inequalities(P: Program, x: Sequence[object], tol: float | None = None) -> list[int]:
    """Indices i with |g_i(x̄)| ≤ tol, zero-based."""
    x = require_feasible(P, x, tol)
    tol = default_tol(x) if tol is None else tol
    return [i for i, e in enumerate(P.g) if abs(e(x)) <= tol]


def block_points(P: Program, x: Sequence[object], tol: float | None = None) -> list[Point]:
    """Φ_i(x̄) per block, snapped onto Γ_i when x̄ is feasible only up to ``tol``."""
    x = require_feasible(P, x, tol)
    tol = default_tol(x) if tol is None else tol
    return [snap(b.gamma, b.map(x), tol) for b in P.blocks]


def block_active_pieces(
    P: Program, x: Sequence[object], tol: float | None = None
) -> list[list[int]]:
    x = require_feasible(P, x, tol)
    points = block_points(P, x, tol)
    # exact points sit in the set after snapping and are matched exactly
    if is_exact(x):
        piece_tol = 0
    else:
        piece_tol = settings.FEAS_TOL_FLOAT if tol is None else tol
    return [active_pieces(b.gamma, y, piece_tol) for b, y in zip(P.blocks, points)]


def admissible_partitions(
    P: Program, x: Sequence[object], tol: float | None = None
) -> list[Partition]:
    """Every assignment of blocks to pieces that contain Φ_i(x̄)."""
    per_block = block_active_pieces(P, x, tol)
    partitions = [Partition(choice) for choice in product(*per_block)]
    logger.debug(f"{len(partitions)} admissible partitions from pieces {per_block}")
    return partitions


def subsystem(P: Program, part: Partition) -> Program:
    """The program with each block's set replaced by its assigned piece."""
    if len(part) != len(P.blocks):
        raise DimensionMismatchError(
            f"partition covers {len(part)} blocks, the program has {len(P.blocks)}"
        )
    blocks = tuple(
        Block(b.map, DisjunctiveSet((b.gamma.pieces[r],)))
        for b, r in zip(P.blocks, part.assignment)
    )
    return replace(P, blocks=blocks)


def nearest_partition(P: Program, x: Sequence[object]) -> Partition:
    """Each block goes to the lowest-index piece nearest to Φ_i(x)."""
    x = _check_point(P, x)
    return Partition(tuple(nearest_piece(b.gamma, b.map(x)) for b in P.blocks))
