"""Exact linear algebra over the rationals.

Vectors are plain tuples of ``Fraction``. Everything here is exact; the float
path for sampled data lives in ``geometry.rank``.
"""

from collections.abc import Iterable, Sequence
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational

from core.errors import DimensionMismatchError

Vector = tuple[Fraction, ...]
Scalar = Fraction | float


def to_fraction(value: object) -> Fraction:
    """Convert ints, rationals, rational strings ("1/2", "0.25") and floats to Fraction.

    Floats go through their shortest repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int | Rational):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def as_vector(values: Iterable[object]) -> Vector:
    return tuple(to_fraction(v) for v in values)


def is_exact(values: Iterable[object]) -> bool:
    return all(isinstance(v, int | Fraction) and not isinstance(v, bool) for v in values)


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_vector(v: Sequence[Fraction]) -> str:
    return "(" + ", ".join(format_rational(c) for c in v) + ")"


def check_dims(*vectors: Sequence[object]) -> int:
    dims = {len(v) for v in vectors}
    if len(dims) > 1:
        raise DimensionMismatchError(f"vectors of different dimensions: {sorted(dims)}")
    return dims.pop() if dims else 0


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def scale(t: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(t * a for a in v)


def neg(v: Sequence[Fraction]) -> Vector:
    return tuple(-a for a in v)


def combine(coeffs: Sequence[Fraction], vectors: Sequence[Sequence[Fraction]], dim: int) -> Vector:
    out = [Fraction(0)] * dim
    for c, v in zip(coeffs, vectors, strict=True):
        if c:
            for k in range(dim):
                out[k] += c * v[k]
    return tuple(out)


def is_zero(v: Sequence[Scalar]) -> bool:
    return all(c == 0 for c in v)


def unit(dim: int, index: int, sign: int = 1) -> Vector:
    return tuple(Fraction(sign if k == index else 0) for k in range(dim))


def transpose_apply(matrix: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    """Return matrixᵀ·v for a row-major ``matrix``."""
    cols = len(matrix[0]) if matrix else 0
    return combine(v, matrix, cols)


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(vectors)[1]) if vectors else 0


def is_independent(vectors: Sequence[Sequence[Fraction]]) -> bool:
    return rank(vectors) == len(vectors)


def nullspace(rows: Sequence[Sequence[Fraction]], dim: int) -> list[Vector]:
    """Basis of {x : ⟨row, x⟩ = 0 for every row}."""
    reduced, pivots = rref(rows)
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * dim
        x[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def null_combination(vectors: Sequence[Sequence[Fraction]]) -> Vector | None:
    """A nonzero γ with Σ γ_i v_i = 0, or None when the vectors are independent."""
    if not vectors:
        return None
    dim = len(vectors[0])
    columns_as_rows = [[v[k] for v in vectors] for k in range(dim)]
    basis = nullspace(columns_as_rows, len(vectors))
    return basis[0] if basis else None


def independent_indices(vectors: Sequence[Sequence[Fraction]]) -> list[int]:
    """Greedy first-come maximal linearly independent subset."""
    chosen: list[int] = []
    current: list[Sequence[Fraction]] = []
    for i, v in enumerate(vectors):
        if rank([*current, v]) > len(current):
            chosen.append(i)
            current.append(v)
    return chosen


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Vector | None:
    """Solve a square nonsingular system exactly; None if singular."""
    n = len(matrix)
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs, strict=True)]
    reduced, pivots = rref(augmented)
    if pivots != list(range(n)):
        return None
    return tuple(row[n] for row in reduced)


def solve_least_norm(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Vector | None:
    """Minimum-norm solution of rows·x = rhs for linearly independent rows."""
    if not rows:
        return None
    gram = [[dot(a, b) for b in rows] for a in rows]
    mu = solve(gram, rhs)
    if mu is None:
        return None
    return combine(mu, rows, len(rows[0]))


def primitive(v: Sequence[Fraction]) -> Vector:
    """Positive rescaling of v to a primitive integer vector."""
    if is_zero(v):
        return tuple(Fraction(0) for _ in v)
    denom = lcm(*(c.denominator for c in v))
    ints = [int(c * denom) for c in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(Fraction(a // g) for a in ints)


def sign_normalized(v: Sequence[Fraction]) -> Vector:
    """Primitive representative of the line spanned by v (first nonzero entry positive)."""
    p = primitive(v)
    lead = next((c for c in p if c != 0), Fraction(0))
    return neg(p) if lead < 0 else p


def project_out(v: Sequence[Fraction], basis: Sequence[Sequence[Fraction]]) -> Vector:
    """Orthogonal projection of v onto the complement of span(basis)."""
    basis = list(basis)
    if not basis:
        return tuple(v)
    gram = [[dot(a, b) for b in basis] for a in basis]
    coeffs = solve(gram, [dot(a, v) for a in basis])
    if coeffs is None:
        raise ValueError("projection basis must be linearly independent")
    return sub(v, combine(coeffs, basis, len(v)))
