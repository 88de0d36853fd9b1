"""Program files.

A program file is TOML. The generic form lists ``vars``, optional ``g``/``h``
expression lists and an ``objective``, then one ``[[blocks]]`` table per
disjunctive constraint::

    vars = ["x", "y"]
    h = ["x - y"]

    [[blocks]]
    map = ["x", "y"]
    set = "omega_E"

A block set is either a shorthand string (``omega_E``, ``omega_V``, ``omega_S``
or ``boxes [a1,b1]x[a2,b2]; [c1,d1]x[c2,d2]``) or a list of
``[[blocks.pieces]]`` tables with ``le``/``eq`` rows ``[c_1, ..., c_p, alpha]``.
Ortho programs set ``kind`` to ``mpec``, ``mpvc`` or ``mpsc`` and give ``G``
and ``H`` lists instead of blocks. Numbers are TOML integers or rational
strings; TOML floats are rejected. See docs/program-format.md.
"""

import logging
import re
import tomllib
from pathlib import Path
from typing import Annotated, Any, Literal

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from core.errors import VerificationError
from core.linalg import format_rational, to_fraction
from disjunctive import DisjunctiveSet, boxes
from disjunctive.sets import OMEGA_FACTORIES
from expr import Expr, ExprSyntaxError, VectorFunc, parse
from geometry import Polyhedron
from model.program import Block, OrthoKind, OrthoProgram, Program

logger = logging.getLogger(__name__)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INTERVAL = re.compile(r"\[\s*([^,\]]+?)\s*,\s*([^,\]]+?)\s*\]")
_TOML_POSITION = re.compile(r"line (\d+), column (\d+)")


class ProgramFormatError(VerificationError, ValueError):
    """A program file that does not parse; ``location`` points at the offending part."""

    def __init__(self, message: str, location: str | None = None) -> None:
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


def check_rational_literal(x: Any) -> str:
    if isinstance(x, bool | float):
        raise ValueError(f"{x!r} is not accepted here; write rationals as strings such as \"1/2\"")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, str):
        try:
            return format_rational(to_fraction(x))
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational literal: {x!r}") from e
    raise ValueError(f"expected an integer or a rational string, got {x!r}")


RationalLiteral = Annotated[str, BeforeValidator(check_rational_literal)]


class PieceSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    le: list[list[RationalLiteral]] = []
    eq: list[list[RationalLiteral]] = []


class BlockSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    map: list[str] = Field(min_length=1)
    set_spec: str | None = Field(default=None, alias="set")
    pieces: list[PieceSpec] | None = None

    @model_validator(mode="after")
    def one_set(self) -> "BlockSpec":
        if (self.set_spec is None) == (self.pieces is None):
            raise ValueError("a block needs exactly one of 'set' or 'pieces'")
        if self.pieces is not None and not self.pieces:
            raise ValueError("'pieces' must not be empty")
        return self


class ProgramSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vars: list[str] = Field(min_length=1)
    kind: Literal["generic", "mpec", "mpvc", "mpsc"] = "generic"
    g: list[str] = []
    h: list[str] = []
    objective: str | None = None
    blocks: list[BlockSpec] = []
    G: list[str] = []
    H: list[str] = []

    @field_validator("vars")
    @classmethod
    def check_vars(cls, names: list[str]) -> list[str]:
        for name in names:
            if not _IDENT.fullmatch(name):
                raise ValueError(f"{name!r} is not a valid variable name")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        return names

    @model_validator(mode="after")
    def check_kind(self) -> "ProgramSpec":
        if self.kind == "generic":
            if self.G or self.H:
                raise ValueError("G and H are only allowed with kind mpec, mpvc or mpsc")
        else:
            if self.blocks:
                raise ValueError(f"kind {self.kind} programs take G and H instead of blocks")
            if len(self.G) != len(self.H):
                raise ValueError(f"{len(self.G)} G functions but {len(self.H)} H functions")
        return self


def _bound(text: str, lower: bool, location: str) -> object:
    text = text.strip()
    if text in ("inf", "+inf"):
        if lower:
            raise ProgramFormatError("lower bound cannot be +inf", location)
        return None
    if text == "-inf":
        if not lower:
            raise ProgramFormatError("upper bound cannot be -inf", location)
        return None
    try:
        return to_fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ProgramFormatError(f"bad bound {text!r}", location) from e


def parse_set(text: str, location: str = "set") -> DisjunctiveSet:
    """Read a set shorthand: an Ω name or ``boxes`` followed by ``;``-separated products."""
    name = text.strip()
    for tag, factory in OMEGA_FACTORIES.items():
        if name.lower() == tag.value.lower():
            return factory()
    if not name.startswith("boxes"):
        raise ProgramFormatError(f"unknown set {name!r}", location)
    products = []
    for k, part in enumerate(name[len("boxes"):].split(";")):
        where = f"{location}, box {k + 1}"
        intervals = _INTERVAL.findall(part)
        leftover = _INTERVAL.sub("", part).replace("x", "").strip()
        if not intervals or leftover:
            raise ProgramFormatError(f"cannot read box {part.strip()!r}", where)
        products.append(
            [(_bound(lo, True, where), _bound(hi, False, where)) for lo, hi in intervals]
        )
    try:
        return boxes(*products)
    except ValueError as e:
        raise ProgramFormatError(str(e), location) from e


def _expr(text: str, variables: tuple[str, ...], location: str) -> Expr:
    try:
        return parse(text, variables)
    except ExprSyntaxError as e:
        raise ProgramFormatError(str(e), location) from e


def _exprs(texts: list[str], variables: tuple[str, ...], name: str) -> tuple[Expr, ...]:
    return tuple(_expr(t, variables, f"{name}[{i}]") for i, t in enumerate(texts))


def _pieces(spec: list[PieceSpec], dim: int, location: str) -> DisjunctiveSet:
    pieces = []
    for r, piece in enumerate(spec):
        where = f"{location}.pieces[{r}]"
        for row in (*piece.le, *piece.eq):
            if len(row) != dim + 1:
                raise ProgramFormatError(
                    f"rows need {dim + 1} entries (normal then right-hand side), got {len(row)}",
                    where,
                )
        try:
            pieces.append(
                Polyhedron.build(
                    dim,
                    le=[(row[:-1], row[-1]) for row in piece.le],
                    eq=[(row[:-1], row[-1]) for row in piece.eq],
                )
            )
        except ValueError as e:
            raise ProgramFormatError(str(e), where) from e
    return DisjunctiveSet(tuple(pieces))


def _block(spec: BlockSpec, variables: tuple[str, ...], location: str) -> Block:
    components = _exprs(spec.map, variables, f"{location}.map")
    dim = len(components)
    if spec.set_spec is not None:
        gamma = parse_set(spec.set_spec, f"{location}.set")
    else:
        gamma = _pieces(spec.pieces, dim, location)
    try:
        return Block(VectorFunc(components, variables), gamma)
    except ValueError as e:
        raise ProgramFormatError(str(e), location) from e


def build_program(spec: ProgramSpec) -> Program | OrthoProgram:
    variables = tuple(spec.vars)
    g = _exprs(spec.g, variables, "g")
    h = _exprs(spec.h, variables, "h")
    objective = _expr(spec.objective, variables, "objective") if spec.objective else None
    if spec.kind != "generic":
        return OrthoProgram(
            variables,
            OrthoKind(spec.kind),
            G=_exprs(spec.G, variables, "G"),
            H=_exprs(spec.H, variables, "H"),
            g=g,
            h=h,
            objective=objective,
        )
    blocks = tuple(_block(b, variables, f"blocks[{i}]") for i, b in enumerate(spec.blocks))
    return Program(variables, g, h, blocks, objective)


def _location(loc: tuple) -> str:
    parts = []
    for item in loc:
        if isinstance(item, int):
            parts.append(f"[{item}]")
        else:
            parts.append(f".{item}" if parts else str(item))
    return "".join(parts) or "program"


def loads_program(text: str) -> Program | OrthoProgram:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        position = _TOML_POSITION.search(str(e))
        location = f"line {position[1]}, column {position[2]}" if position else None
        raise ProgramFormatError(str(e), location) from e
    try:
        spec = ProgramSpec.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise ProgramFormatError(first["msg"], _location(first["loc"])) from e
    program = build_program(spec)
    logger.debug(f"loaded program over {program.variables}")
    return program


def load_program(path: str | Path) -> Program | OrthoProgram:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ProgramFormatError(f"cannot read the file: {e.strerror}", str(path)) from e
    return loads_program(text)

