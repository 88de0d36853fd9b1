"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := rational | ident | '(' expr ')' | '-' base

A rational literal is ``123``, ``1.25`` or ``3/4`` written without spaces.
Unary minus binds tighter than ``^``: ``-x^2`` is ``(-x)^2``.
"""

import re
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from core.errors import VerificationError
from expr.nodes import Add, Const, Expr, Mul, Neg, Node, Pow, Var


class ExprSyntaxError(VerificationError, ValueError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class UnknownIdentifierError(ExprSyntaxError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d+)?(?:/\d+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            offset = _byte_offset(text, start)
            raise ExprSyntaxError(f"unexpected character {text[start]!r}", offset)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]) -> None:
        self.text = text
        self.index = {name: i for i, name in enumerate(variables)}
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, token: Token | None = None) -> ExprSyntaxError:
        token = token or self.current
        return ExprSyntaxError(message, _byte_offset(self.text, token.pos))

    def accept(self, op: str) -> bool:
        if self.current.kind == "op" and self.current.text == op:
            self.pos += 1
            return True
        return False

    def parse(self) -> Node:
        node = self.expr()
        if self.current.kind != "end":
            raise self.error(f"unexpected {self.current.text!r}")
        return node

    def expr(self) -> Node:
        terms = [self.term()]
        while True:
            if self.accept("+"):
                terms.append(self.term())
            elif self.accept("-"):
                terms.append(Neg(self.term()))
            else:
                break
        return terms[0] if len(terms) == 1 else Add(tuple(terms))

    def term(self) -> Node:
        factors = [self.factor()]
        while self.accept("*"):
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def factor(self) -> Node:
        base = self.base()
        if self.accept("^"):
            token = self.current
            if token.kind != "number" or not token.text.isdigit():
                raise self.error("exponent must be a nonnegative integer literal")
            self.pos += 1
            return Pow(base, int(token.text))
        return base

    def base(self) -> Node:
        token = self.current
        match token.kind:
            case "number":
                self.pos += 1
                try:
                    return Const(Fraction(token.text))
                except ZeroDivisionError:
                    raise self.error("zero denominator", token) from None
            case "ident":
                self.pos += 1
                if token.text not in self.index:
                    raise UnknownIdentifierError(
                        f"unknown identifier {token.text!r}", _byte_offset(self.text, token.pos)
                    )
                return Var(self.index[token.text])
            case "op" if token.text == "(":
                self.pos += 1
                inner = self.expr()
                if not self.accept(")"):
                    raise self.error("expected ')'")
                return inner
            case "op" if token.text == "-":
                self.pos += 1
                return Neg(self.base())
            case "end":
                raise self.error("unexpected end of input")
        raise self.error(f"unexpected {token.text!r}")


def parse(text: str, variables: Sequence[str]) -> Expr:
    """Parse ``text`` into an expression over ``variables``."""
    return Expr(_Parser(text, variables).parse(), tuple(variables))
