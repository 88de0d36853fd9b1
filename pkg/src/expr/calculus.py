"""Symbolic differentiation and vector-valued maps."""

from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache, singledispatch

from core.errors import DimensionMismatchError
from core.linalg import Scalar
from expr.nodes import (
    ZERO,
    Add,
    Const,
    Expr,
    Mul,
    Neg,
    Node,
    Pow,
    Var,
    add,
    const,
    mul,
    neg,
    power,
)


@singledispatch
def derivative(node: Node, index: int) -> Node:
    """Partial derivative of ``node`` with respect to variable ``index``."""
    raise NotImplementedError(f"cannot differentiate {type(node).__name__}")


@derivative.register
def _(node: Const, index: int) -> Node:
    return ZERO


@derivative.register
def _(node: Var, index: int) -> Node:
    return const(int(node.index == index))


@derivative.register
def _(node: Add, index: int) -> Node:
    return add(*(derivative(t, index) for t in node.terms))


@derivative.register
def _(node: Neg, index: int) -> Node:
    return neg(derivative(node.operand, index))


@derivative.register
def _(node: Mul, index: int) -> Node:
    terms = []
    for k, factor in enumerate(node.factors):
        d = derivative(factor, index)
        if d == ZERO:
            continue
        rest = node.factors[:k] + node.factors[k + 1 :]
        terms.append(mul(d, *rest))
    return add(*terms)


@derivative.register
def _(node: Pow, index: int) -> Node:
    if node.exponent == 0:
        return ZERO
    d = derivative(node.base, index)
    if d == ZERO:
        return ZERO
    return mul(const(node.exponent), power(node.base, node.exponent - 1), d)


def partial(e: Expr, index: int) -> Expr:
    return Expr(derivative(e.node, index), e.variables)


@dataclass(frozen=True)
class VectorFunc:
    """An ordered tuple of polynomials sharing one variable list."""

    components: tuple[Expr, ...]
    variables: tuple[str, ...]

    def __post_init__(self) -> None:
        for c in self.components:
            if c.variables != self.variables:
                raise DimensionMismatchError("components must share the variable list")

    @classmethod
    def of(cls, components: Sequence[Expr], variables: Sequence[str]) -> "VectorFunc":
        return cls(tuple(components), tuple(variables))

    @property
    def input_dim(self) -> int:
        return len(self.variables)

    @property
    def output_dim(self) -> int:
        return len(self.components)

    def __len__(self) -> int:
        return self.output_dim

    def __call__(self, x: Sequence[Scalar]) -> tuple[Scalar, ...]:
        return tuple(c(x) for c in self.components)

    def is_affine(self) -> bool:
        return all(c.is_affine() for c in self.components)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def gradient(e: Expr) -> VectorFunc:
    return VectorFunc(tuple(partial(e, k) for k in range(e.dim)), e.variables)


def jacobian(F: VectorFunc, x: Sequence[Scalar]) -> list[tuple[Scalar, ...]]:
    """Rows are the component gradients evaluated at ``x``."""
    if len(x) != F.input_dim:
        raise DimensionMismatchError(
            f"expected a point of dimension {F.input_dim}, got {len(x)}"
        )
    return [_gradient_of(c)(x) for c in F.components]


@lru_cache(maxsize=None)
def _gradient_of(e: Expr) -> VectorFunc:
    return gradient(e)


def evaluate_gradient(e: Expr, x: Sequence[Scalar]) -> tuple[Scalar, ...]:
    if len(x) != e.dim:
        raise DimensionMismatchError(f"expected a point of dimension {e.dim}, got {len(x)}")
    return _gradient_of(e)(x)
