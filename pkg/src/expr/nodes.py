"""Polynomial expression trees.

Nodes are frozen dataclasses so expressions are hashable and safe to share.
The smart constructors ``add``, ``mul``, ``neg`` and ``power`` fold constants;
the parser builds raw nodes so printing and re-parsing is structure preserving.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from core.errors import DimensionMismatchError
from core.linalg import Scalar, format_rational


@dataclass(frozen=True)
class Node:
    pass


@dataclass(frozen=True)
class Const(Node):
    value: Fraction


@dataclass(frozen=True)
class Var(Node):
    index: int


@dataclass(frozen=True)
class Add(Node):
    terms: tuple[Node, ...]


@dataclass(frozen=True)
class Mul(Node):
    factors: tuple[Node, ...]


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int

    def __post_init__(self) -> None:
        if self.exponent < 0:
            raise ValueError("integer powers must be nonnegative")


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))


def const(value: int | Fraction) -> Const:
    return Const(Fraction(value))


def add(*terms: Node) -> Node:
    total = Fraction(0)
    rest: list[Node] = []
    for t in terms:
        if isinstance(t, Const):
            total += t.value
        else:
            rest.append(t)
    if total:
        rest.append(Const(total))
    if not rest:
        return ZERO
    return rest[0] if len(rest) == 1 else Add(tuple(rest))


def mul(*factors: Node) -> Node:
    coeff = Fraction(1)
    rest: list[Node] = []
    for f in factors:
        if isinstance(f, Const):
            coeff *= f.value
        else:
            rest.append(f)
    if coeff == 0:
        return ZERO
    if not rest:
        return Const(coeff)
    if coeff == -1:
        return neg(rest[0] if len(rest) == 1 else Mul(tuple(rest)))
    if coeff != 1:
        rest.insert(0, Const(coeff))
    return rest[0] if len(rest) == 1 else Mul(tuple(rest))


def neg(node: Node) -> Node:
    match node:
        case Const(value=v):
            return Const(-v)
        case Neg(operand=inner):
            return inner
        case _:
            return Neg(node)


def power(base: Node, exponent: int) -> Node:
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    if isinstance(base, Const):
        return Const(base.value**exponent)
    return Pow(base, exponent)


def evaluate(node: Node, x: Sequence[Scalar]) -> Scalar:
    match node:
        case Const(value=v):
            return v
        case Var(index=i):
            return x[i]
        case Add(terms=terms):
            total = Fraction(0)
            for t in terms:
                total = total + evaluate(t, x)
            return total
        case Mul(factors=factors):
            prod = Fraction(1)
            for f in factors:
                prod = prod * evaluate(f, x)
            return prod
        case Pow(base=b, exponent=k):
            return evaluate(b, x) ** k
        case Neg(operand=inner):
            return -evaluate(inner, x)
    raise TypeError(f"unknown node {node!r}")


def degree(node: Node) -> int:
    """Syntactic total degree (an upper bound on the true degree)."""
    match node:
        case Const():
            return 0
        case Var():
            return 1
        case Add(terms=terms):
            return max(degree(t) for t in terms)
        case Mul(factors=factors):
            return sum(degree(f) for f in factors)
        case Pow(base=b, exponent=k):
            return k * degree(b)
        case Neg(operand=inner):
            return degree(inner)
    raise TypeError(f"unknown node {node!r}")


def max_index(node: Node) -> int:
    match node:
        case Var(index=i):
            return i
        case Add(terms=children) | Mul(factors=children):
            return max(max_index(c) for c in children)
        case Pow(base=inner) | Neg(operand=inner):
            return max_index(inner)
    return -1


_PREC_ADD, _PREC_MUL, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4


def _precedence(node: Node) -> int:
    match node:
        case Add():
            return _PREC_ADD
        case Mul():
            return _PREC_MUL
        case Pow():
            return _PREC_POW
        case Const(value=v) if v < 0:
            return _PREC_ADD
        case Neg():
            return _PREC_ADD
    return _PREC_ATOM


def to_text(node: Node, names: Sequence[str]) -> str:
    """Print a node so that parsing the text gives back the same tree."""

    def wrap(child: Node, minimum: int) -> str:
        text = to_text(child, names)
        return f"({text})" if _precedence(child) < minimum else text

    match node:
        case Const(value=v):
            return format_rational(v)
        case Var(index=i):
            return names[i]
        case Add(terms=terms):
            first = to_text(terms[0], names)
            parts = [f"({first})" if isinstance(terms[0], Add) else first]
            for t in terms[1:]:
                if isinstance(t, Neg):
                    parts.append(f" - {wrap(t.operand, _PREC_MUL)}")
                else:
                    parts.append(f" + {wrap(t, _PREC_MUL)}")
            return "".join(parts)
        case Mul(factors=factors):
            return "*".join(wrap(f, _PREC_POW) for f in factors)
        case Pow(base=b, exponent=k):
            return f"{wrap(b, _PREC_ATOM)}^{k}"
        case Neg(operand=inner):
            return f"-{wrap(inner, _PREC_ATOM)}"
    raise TypeError(f"unknown node {node!r}")


@dataclass(frozen=True)
class Expr:
    """A polynomial over the named variables ``variables``."""

    node: Node
    variables: tuple[str, ...]

    def __post_init__(self) -> None:
        if max_index(self.node) >= len(self.variables):
            raise ValueError("variable index exceeds the declared dimension")

    @property
    def dim(self) -> int:
        return len(self.variables)

    def __call__(self, x: Sequence[Scalar]) -> Scalar:
        if len(x) != self.dim:
            raise DimensionMismatchError(f"expected a point of dimension {self.dim}, got {len(x)}")
        return evaluate(self.node, x)

    def __str__(self) -> str:
        return to_text(self.node, self.variables)

    def __neg__(self) -> "Expr":
        return Expr(neg(self.node), self.variables)

    @cached_property
    def degree(self) -> int:
        return degree(self.node)

    def is_affine(self) -> bool:
        return self.degree <= 1


def evaluate_at(e: Expr, x: Sequence[Scalar]) -> Scalar:
    """Exact value for rational ``x``; float arithmetic when ``x`` holds floats."""
    return e(x)
