"""Sampled sequences x̄ + r_j·d and rank scans along them.

A sequence is a direction d and the radii r_j = r_0·2^-j, j = 0..J. Directions
are the signed coordinate axes followed by seeded random unit vectors rounded
to dyadic rationals, so sample points stay exact and every rank is exact.
"""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from core.linalg import Scalar, Vector, unit
from expr import Expr, evaluate_gradient, jacobian
from geometry import rank
from model import Program
from schema import FamilyRecord, RunConfig, SequenceWitness

logger = logging.getLogger(__name__)

DIRECTION_DENOMINATOR = 2**40

# Subgradient samples of g_i at a point; the default is the gradient.
Subgradients = Callable[[int, Sequence[Scalar]], Sequence[Sequence[Scalar]]]


@lru_cache(maxsize=32)
def directions(dim: int, count: int, seed: int) -> tuple[Vector, ...]:
    axes = [unit(dim, k, s) for k in range(dim) for s in (1, -1)]
    rng = np.random.default_rng(seed)
    drawn: list[Vector] = []
    while len(drawn) < count:
        d = rng.standard_normal(dim)
        length = float(np.linalg.norm(d))
        if length < 1e-12:
            continue
        drawn.append(
            tuple(
                Fraction(round(c / length * DIRECTION_DENOMINATOR), DIRECTION_DENOMINATOR)
                for c in d
            )
        )
    return tuple(axes + drawn)


def sample_point(center: Sequence[Scalar], d: Sequence[Scalar], r: Scalar) -> tuple[Scalar, ...]:
    return tuple(a + r * b for a, b in zip(center, d))


@lru_cache(maxsize=1 << 16)
def gradient_at(e: Expr, x: tuple[Scalar, ...]) -> tuple[Scalar, ...]:
    return evaluate_gradient(e, x)


@lru_cache(maxsize=1 << 14)
def _jacobian_at(
    components: tuple[Expr, ...], x: tuple[Scalar, ...]
) -> list[tuple[Scalar, ...]]:
    return [gradient_at(c, x) for c in components]


def _sq_distance(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    return sum((a - b) ** 2 for a, b in zip(u, v))


@dataclass(frozen=True)
class VectorFamily:
    """{v_i}_I ∪ {∇h_j}_J ∪ {∇Φ_i(x)ᵀβ : β ∈ A_i}, described independently of x."""

    g: tuple[int, ...] = ()
    h: tuple[int, ...] = ()
    generators: tuple[tuple[Vector, ...], ...] = ()
    # subgradient chosen for each g index at the base point, when a hook is used
    g_choice: tuple[Vector, ...] = ()

    @property
    def size(self) -> int:
        return len(self.g) + len(self.h) + sum(len(b) for b in self.generators)

    def is_empty(self) -> bool:
        return self.size == 0

    def vectors(
        self, P: Program, x: tuple[Scalar, ...], subgradients: Subgradients | None = None
    ) -> list[tuple[Scalar, ...]]:
        out = []
        for k, i in enumerate(self.g):
            if subgradients is None:
                out.append(gradient_at(P.g[i], x))
            else:
                target = self.g_choice[k]
                options = subgradients(i, x)
                out.append(min(options, key=lambda v: _sq_distance(v, target)))
        out.extend(gradient_at(P.h[j], x) for j in self.h)
        for block, betas in zip(P.blocks, self.generators):
            if not betas:
                continue
            rows = _jacobian_at(block.map.components, x)
            for beta in betas:
                out.append(
                    tuple(sum(b * row[k] for b, row in zip(beta, rows)) for k in range(len(x)))
                )
        return out

    def to_model(self) -> FamilyRecord:
        return FamilyRecord(
            g_indices=list(self.g),
            h_indices=list(self.h),
            generators=[[list(b) for b in betas] for betas in self.generators],
        )

    @classmethod
    def from_model(cls, record: FamilyRecord) -> "VectorFamily":
        return cls(
            tuple(record.g_indices),
            tuple(record.h_indices),
            tuple(tuple(tuple(b) for b in betas) for betas in record.generators),
        )


def family_rank(
    P: Program,
    family: VectorFamily,
    x: tuple[Scalar, ...],
    config: RunConfig,
    subgradients: Subgradients | None = None,
) -> int:
    vectors = family.vectors(P, x, subgradients)
    return rank(vectors, config.rank_tol) if vectors else 0


class ScanStatus(StrEnum):
    WITNESS = "witness"
    CLEAN = "clean"
    MIXED = "mixed"


class Scan(NamedTuple):
    status: ScanStatus
    direction: Vector | None = None
    radii: tuple[Fraction, ...] = ()
    ranks: tuple[int, ...] = ()

    def to_model(self, family_size: int, center_rank: int | None = None) -> SequenceWitness:
        return SequenceWitness(
            direction=list(self.direction),
            radii=list(self.radii),
            ranks=list(self.ranks),
            family_size=family_size,
            center_rank=center_rank,
        )


def scan(
    rank_at: Callable[[tuple[Scalar, ...]], int],
    bad: Callable[[int], bool],
    center: Sequence[Scalar],
    config: RunConfig,
) -> Scan:
    """Walk every sampled sequence toward ``center``.

    A direction is a witness when ``bad`` holds at each of the trailing
    ``witness_window`` radii; the scan is clean when ``bad`` fails for every
    radius index from ``dependence_start`` on, in every direction.
    """
    radii = config.scheme.radii()
    last = config.levels
    trailing = range(last + 1 - config.witness_window, last + 1)
    settled = range(config.dependence_start, last + 1)
    mixed = False
    for d in directions(len(center), config.directions, config.seed):
        ranks: dict[int, int] = {}

        def at(j: int) -> int:
            if j not in ranks:
                ranks[j] = rank_at(sample_point(center, d, radii[j]))
            return ranks[j]

        if all(bad(at(j)) for j in reversed(trailing)):
            return Scan(
                ScanStatus.WITNESS,
                d,
                tuple(radii[j] for j in trailing),
                tuple(ranks[j] for j in trailing),
            )
        if any(bad(at(j)) for j in settled):
            mixed = True
    return Scan(ScanStatus.MIXED if mixed else ScanStatus.CLEAN)


def dependence_scan(
    P: Program,
    family: VectorFamily,
    center: tuple[Scalar, ...],
    config: RunConfig,
    subgradients: Subgradients | None = None,
) -> Scan:
    """Look for sequences along which ``family`` stays linearly independent."""
    if family.size > P.dim:
        return Scan(ScanStatus.CLEAN)
    size = family.size
    return scan(
        lambda x: family_rank(P, family, x, config, subgradients),
        lambda r: r == size,
        center,
        config,
    )


def constancy_scan(
    P: Program,
    family: VectorFamily,
    center: tuple[Scalar, ...],
    config: RunConfig,
    subgradients: Subgradients | None = None,
) -> tuple[int, Scan]:
    """Look for sequences along which ``family`` changes rank."""
    at_center = family_rank(P, family, center, config, subgradients)
    result = scan(
        lambda x: family_rank(P, family, x, config, subgradients),
        lambda r: r != at_center,
        center,
        config,
    )
    return at_center, result


class RankConstancy(NamedTuple):
    constant: bool | None
    rank_at_center: int
    violation: Scan | None = None


def rank_constancy(
    P: Program, center: tuple[Scalar, ...], config: RunConfig
) -> RankConstancy:
    """Whether {∇h_i} keeps its rank along the sampled sequences; None when mixed."""
    if not P.h:
        return RankConstancy(True, 0)
    family = VectorFamily(h=tuple(range(len(P.h))))
    at_center, result = constancy_scan(P, family, center, config)
    if result.status == ScanStatus.WITNESS:
        logger.info(f"∇h changes rank from {at_center} along {result.direction}")
        return RankConstancy(False, at_center, result)
    return RankConstancy(
        True if result.status == ScanStatus.CLEAN else None, at_center, None
    )


def jacobian_transpose(P: Program, block: int, x: Sequence[Scalar], beta: Sequence[Scalar]):
    """∇Φ_i(x)ᵀβ."""
    rows = jacobian(P.blocks[block].map, x)
    return tuple(sum(b * row[k] for b, row in zip(beta, rows)) for k in range(len(x)))
