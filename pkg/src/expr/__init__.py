from expr.calculus import VectorFunc, derivative, evaluate_gradient, gradient, jacobian, partial
from expr.nodes import Expr, Node, evaluate_at, to_text
from expr.parser import ExprSyntaxError, UnknownIdentifierError, parse

__all__ = [
    "Expr",
    "Node",
    "VectorFunc",
    "ExprSyntaxError",
    "UnknownIdentifierError",
    "parse",
    "evaluate_at",
    "to_text",
    "derivative",
    "partial",
    "gradient",
    "evaluate_gradient",
    "jacobian",
]
