from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

from core.errors import DimensionMismatchError, InfeasiblePointError
from core.linalg import Scalar, Vector, as_vector, dot, format_rational, format_vector, is_zero


class RowKind(StrEnum):
    LE = "le"
    EQ = "eq"


@dataclass(frozen=True)
class Polyhedron:
    """{x : ⟨c_j, x⟩ ≤ α_j for LE rows, ⟨c_j, x⟩ = α_j for EQ rows}."""

    dim: int
    normals: tuple[Vector, ...]
    rhs: tuple[Fraction, ...]
    kinds: tuple[RowKind, ...]

    def __post_init__(self) -> None:
        if not len(self.normals) == len(self.rhs) == len(self.kinds):
            raise ValueError("normals, rhs and kinds must have equal length")
        for j, c in enumerate(self.normals):
            if len(c) != self.dim:
                raise DimensionMismatchError(
                    f"row {j} has dimension {len(c)}, expected {self.dim}"
                )
            if is_zero(c):
                raise ValueError(f"row {j} has a zero normal")

    @classmethod
    def build(
        cls,
        dim: int,
        le: Iterable[tuple[Sequence[object], object]] = (),
        eq: Iterable[tuple[Sequence[object], object]] = (),
    ) -> "Polyhedron":
        normals, rhs, kinds = [], [], []
        for kind, rows in ((RowKind.LE, le), (RowKind.EQ, eq)):
            for c, alpha in rows:
                normals.append(as_vector(c))
                rhs.append(as_vector([alpha])[0])
                kinds.append(kind)
        return cls(dim, tuple(normals), tuple(rhs), tuple(kinds))

    @classmethod
    def whole_space(cls, dim: int) -> "Polyhedron":
        return cls(dim, (), (), ())

    @property
    def inequalities(self) -> list[int]:
        return [j for j, k in enumerate(self.kinds) if k == RowKind.LE]

    @property
    def equalities(self) -> list[int]:
        return [j for j, k in enumerate(self.kinds) if k == RowKind.EQ]

    def __len__(self) -> int:
        return len(self.normals)

    def slack(self, j: int, x: Sequence[Scalar]) -> Scalar:
        """α_j − ⟨c_j, x⟩; nonnegative on feasible LE rows, zero on EQ rows."""
        return self.rhs[j] - dot(self.normals[j], x)

    def violation(self, x: Sequence[Scalar]) -> Scalar:
        worst: Scalar = Fraction(0)
        for j, kind in enumerate(self.kinds):
            s = self.slack(j, x)
            v = -s if kind == RowKind.LE else abs(s)
            if v > worst:
                worst = v
        return worst

    def is_box(self) -> bool:
        """True when every row normal is a signed unit vector."""
        return all(sum(1 for a in c if a != 0) == 1 for c in self.normals)

    def __str__(self) -> str:
        rows = []
        for c, alpha, kind in zip(self.normals, self.rhs, self.kinds):
            op = "<=" if kind == RowKind.LE else "="
            rows.append(f"<{format_vector(c)}, x> {op} {format_rational(alpha)}")
        return "{" + "; ".join(rows) + "}" if rows else f"R^{self.dim}"


def contains(C: Polyhedron, x: Sequence[Scalar], tol: float = 0) -> bool:
    if len(x) != C.dim:
        raise DimensionMismatchError(f"point of dimension {len(x)} for a set in R^{C.dim}")
    return C.violation(x) <= tol


def active_set(C: Polyhedron, x: Sequence[Scalar], tol: float = 0) -> list[int]:
    """Indices of the inequality rows tight at ``x``."""
    if len(x) != C.dim:
        raise DimensionMismatchError(f"point of dimension {len(x)} for a set in R^{C.dim}")
    violation = C.violation(x)
    if violation > tol:
        raise InfeasiblePointError(
            f"point violates the polyhedron by {float(violation):.3g}", float(violation)
        )
    return [j for j in C.inequalities if abs(C.slack(j, x)) <= tol]
