"""Index sets of ortho-disjunctive programs.

Each pair (G_i(x̄), H_i(x̄)) is classified by which of its coordinates vanish
and by the signs of the rest; the classes decide which pairs stay disjunctive
after localization.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

from core.linalg import Scalar, is_exact
from disjunctive import DisjunctiveSet, omega_e, omega_s, omega_v
from expr import VectorFunc
from model import Block, OrthoKind, OrthoProgram, Program, point, require_feasible
from schema import RunConfig

logger = logging.getLogger(__name__)

# class names in display order; the biactive class comes first
CLASSES: dict[OrthoKind, tuple[str, ...]] = {
    OrthoKind.MPEC: ("I00", "I0+", "I+0"),
    OrthoKind.MPVC: ("I00", "I+0", "I0+", "I-0", "I-+"),
    OrthoKind.MPSC: ("IGH", "IG", "IH"),
}
BIACTIVE = {OrthoKind.MPEC: "I00", OrthoKind.MPVC: "I00", OrthoKind.MPSC: "IGH"}

# within this multiple of the tolerance a pair counts as sensitive
SENSITIVITY_FACTOR = 10


def omega(kind: OrthoKind) -> DisjunctiveSet:
    return {OrthoKind.MPEC: omega_e, OrthoKind.MPVC: omega_v, OrthoKind.MPSC: omega_s}[kind]()


@dataclass(frozen=True)
class OrthoIndexSets:
    kind: OrthoKind
    sets: dict[str, tuple[int, ...]]
    # pairs with a coordinate close to zero but not within tolerance
    sensitive: tuple[int, ...] = field(default=())

    def __getitem__(self, name: str) -> tuple[int, ...]:
        return self.sets[name]

    @property
    def biactive(self) -> tuple[int, ...]:
        return self.sets[BIACTIVE[self.kind]]

    def notes(self) -> list[str]:
        return [f"pair {i + 1} lies close to a class boundary" for i in self.sensitive]


def pair_class(kind: OrthoKind, g: Scalar, h: Scalar, tol: float) -> str:
    """Class name of a pair; names outside CLASSES mean the pair is infeasible."""

    def sign(v: Scalar) -> str:
        if abs(v) <= tol:
            return "0"
        return "+" if v > 0 else "-"

    sg, sh = sign(g), sign(h)
    if kind == OrthoKind.MPSC and "0" in (sg, sh):
        if sg == sh:
            return "IGH"
        return "IG" if sg == "0" else "IH"
    return f"I{sg}{sh}"


def as_program(P: OrthoProgram) -> Program:
    """The full generic program with one Ω block per pair."""
    gamma = omega(P.kind)
    blocks = tuple(
        Block(VectorFunc.of([G, H], P.variables), gamma) for G, H in zip(P.G, P.H)
    )
    return Program(P.variables, P.g, P.h, blocks, P.objective)


def classify(
    P: OrthoProgram, x: Sequence[object], tol: float | None = None
) -> OrthoIndexSets:
    x = point(x)
    if tol is None:
        config = RunConfig.from_settings()
        tol = config.feas_tol if is_exact(x) else config.feas_tol_float
    x = require_feasible(as_program(P), x, tol)
    sets: dict[str, list[int]] = {name: [] for name in CLASSES[P.kind]}
    sensitive = []
    for i, (G, H) in enumerate(zip(P.G, P.H)):
        g, h = G(x), H(x)
        sets[pair_class(P.kind, g, h, tol)].append(i)
        if any(tol < abs(v) <= SENSITIVITY_FACTOR * tol for v in (g, h)):
            sensitive.append(i)
    logger.debug(f"{P.kind} index sets at {x}: {sets}")
    return OrthoIndexSets(P.kind, {k: tuple(v) for k, v in sets.items()}, tuple(sensitive))


def to_generic(P: OrthoProgram, x: Sequence[object], tol: float | None = None) -> Program:
    """Localized generic program at x̄.

    Sign-determined pairs turn into equalities or inequalities; only the
    biactive pairs keep an Ω block. New equalities follow h in the order
    G-rows then H-rows, and likewise for inequalities after g.
    """
    idx = classify(P, x, tol)
    g, h = list(P.g), list(P.h)
    match P.kind:
        case OrthoKind.MPEC:
            h += [P.G[i] for i in idx["I0+"]] + [P.H[i] for i in idx["I+0"]]
        case OrthoKind.MPVC:
            h += [P.H[i] for i in idx["I+0"]]
            g += [P.G[i] for i in idx["I0+"]] + [-P.H[i] for i in idx["I-0"]]
        case OrthoKind.MPSC:
            h += [P.G[i] for i in idx["IG"]] + [P.H[i] for i in idx["IH"]]
    gamma = omega(P.kind)
    blocks = tuple(
        Block(VectorFunc.of([P.G[i], P.H[i]], P.variables), gamma) for i in idx.biactive
    )
    return Program(P.variables, tuple(g), tuple(h), blocks, P.objective)
