"""Degenerate multipliers of the stationarity equation.

A candidate is a nonzero solution of

    Σ_{i∈I} λ_i^g v_i + Σ_{j∈J} λ_j^h ∇h_j(x̄) + Σ_i ∇Φ_i(x̄)ᵀ η̄_i = 0

with λ^g ≥ 0 and each η̄_i in the cone of an admissible generator family of
N_Γi(Φ_i(x̄)). Each combination of inequality subset, subgradient choice, family
per block and line orientation is one LP; the LP maximizes the smallest block
weight so every nonempty family really contributes.
"""

import logging
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import NamedTuple

from core.linalg import Scalar, Vector, as_vector, combine, independent_indices, is_exact, neg
from core.lp import solve_lp
from cq.sequences import Subgradients, VectorFamily, gradient_at, jacobian_transpose
from disjunctive import Family, LimitingGenerators, admissible_families, limiting_nc
from model import Program, active_inequalities, block_points
from schema import BranchRecord, MultiplierCandidate, RunConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Multiplier:
    family: VectorFamily
    lambda_g: Vector
    lambda_h: Vector
    eta: tuple[Vector, ...]
    branch: tuple[Family, ...]
    # coefficients over family.vectors(), in order
    coeffs: Vector = ()

    def to_model(self) -> MultiplierCandidate:
        return MultiplierCandidate(
            g_indices=list(self.family.g),
            lambda_g=list(self.lambda_g),
            h_indices=list(self.family.h),
            lambda_h=list(self.lambda_h),
            eta=[list(e) for e in self.eta],
            branch=[BranchRecord(rays=list(f.rays), lines=list(f.lines)) for f in self.branch],
        )


class BlockBranch(NamedTuple):
    """An admissible family with each line given an orientation."""

    family: Family
    signed: tuple[Vector, ...]
    signs: tuple[int, ...]


def block_generators(
    P: Program, x: Sequence[Scalar], config: RunConfig
) -> list[LimitingGenerators]:
    tol = 0 if is_exact(x) else config.feas_tol_float
    points = block_points(P, x, _feas_tol(x, config))
    return [limiting_nc(b.gamma, y, tol) for b, y in zip(P.blocks, points)]


def oriented(family: Family) -> Iterator[BlockBranch]:
    for signs in product((1, -1), repeat=len(family.lines)):
        lines = tuple(v if s > 0 else neg(v) for s, v in zip(signs, family.lines))
        yield BlockBranch(family, (*family.rays, *lines), (1,) * len(family.rays) + signs)


def exact_gradients(P: Program, x: Sequence[Scalar]) -> tuple[list[Vector], list[Vector]]:
    g = [as_vector(gradient_at(e, tuple(x))) for e in P.g]
    h = [as_vector(gradient_at(e, tuple(x))) for e in P.h]
    return g, h


def solve_branch(
    P: Program,
    x: Sequence[Scalar],
    g_vectors: Sequence[Vector],
    h_vectors: Sequence[Vector],
    branches: Sequence[BlockBranch],
    family: VectorFamily,
) -> Multiplier | None:
    """The multiplier of one fully specified branch, or None when only zero solves it."""
    dim = P.dim
    columns: list[Vector] = [*g_vectors, *h_vectors]
    owners: list[int] = []
    signs: list[int] = []
    for i, branch in enumerate(branches):
        for s, sign in zip(branch.signed, branch.signs):
            columns.append(as_vector(jacobian_transpose(P, i, x, s)))
            owners.append(i)
            signs.append(sign)
    n_g, n_h, n_c = len(g_vectors), len(h_vectors), len(owners)
    n = n_g + n_h + n_c + 1
    A_eq = [[col[k] for col in columns] + [0] for k in range(dim)]
    A_eq.append([1] * n_g + [0] * n_h + [1] * n_c + [0])
    b_eq = [0] * dim + [1]
    A_ub = []
    for i, branch in enumerate(branches):
        if branch.signed:
            A_ub.append([0] * (n_g + n_h) + [-int(o == i) for o in owners] + [1])
    if not A_ub:
        A_ub.append([-1] * n_g + [0] * (n_h + n_c) + [1])
    cost = [0] * (n - 1) + [-1]
    free = [False] * n_g + [True] * n_h + [False] * (n_c + 1)
    result = solve_lp(cost, A_ub, [0] * len(A_ub), A_eq, b_eq, free)
    if not result.success or result.value >= 0:
        return None
    values = result.x
    weights = values[n_g + n_h : n_g + n_h + n_c]
    eta = []
    for i, branch in enumerate(branches):
        mine = [c for c, o in zip(weights, owners) if o == i]
        if branch.signed:
            eta.append(combine(mine, branch.signed, len(branch.signed[0])))
        else:
            eta.append(tuple(Fraction(0) for _ in range(P.blocks[i].gamma.dim)))
    lambda_g, lambda_h = tuple(values[:n_g]), tuple(values[n_g : n_g + n_h])
    coeffs = (*lambda_g, *lambda_h, *(c * s for c, s in zip(weights, signs)))
    chosen = tuple(b.family for b in branches)
    return Multiplier(family, lambda_g, lambda_h, tuple(eta), chosen, coeffs)


class MultiplierSearch:
    """Iterate degenerate multipliers over every branch, within a budget of LP solves.

    ``g_subsets`` enumerates subsets of the active inequalities by size;
    otherwise every active inequality takes part. ``skip`` lets the caller drop
    families whose behaviour along sequences is already known.
    """

    def __init__(
        self,
        P: Program,
        x: Sequence[Scalar],
        config: RunConfig,
        h_indices: Sequence[int],
        *,
        g_subsets: bool = True,
        budget: int | None = None,
        subgradients: Subgradients | None = None,
        skip: Callable[[VectorFamily], bool] | None = None,
    ) -> None:
        self.P = P
        self.x = tuple(x)
        self.config = config
        self.h_indices = tuple(h_indices)
        self.g_subsets = g_subsets
        self.budget = config.candidate_cap if budget is None else budget
        self.subgradients = subgradients
        self.skip = skip
        self.tried = 0
        self.capped = False
        self.active = active_inequalities(P, self.x, _feas_tol(self.x, config))
        self.generators = block_generators(P, self.x, config)
        self.families = [admissible_families(L) for L in self.generators]

    def _g_options(self, i: int) -> list[Vector]:
        if self.subgradients is None:
            return [as_vector(gradient_at(self.P.g[i], self.x))]
        return [as_vector(v) for v in self.subgradients(i, self.x)]

    def _g_sets(self) -> Iterator[tuple[int, ...]]:
        if not self.g_subsets:
            yield tuple(self.active)
            return
        for size in range(len(self.active) + 1):
            yield from combinations(self.active, size)

    def __iter__(self) -> Iterator[Multiplier]:
        h_vectors = [as_vector(gradient_at(self.P.h[j], self.x)) for j in self.h_indices]
        for I in self._g_sets():
            for choice in product(*(self._g_options(i) for i in I)):
                for families in product(*self.families):
                    if not I and all(f.size == 0 for f in families):
                        continue
                    family = VectorFamily(
                        I,
                        self.h_indices,
                        tuple((*f.rays, *f.lines) for f in families),
                        choice if self.subgradients is not None else (),
                    )
                    if self.skip is not None and self.skip(family):
                        continue
                    for branches in product(*(oriented(f) for f in families)):
                        if self.tried >= self.budget:
                            self.capped = True
                            logger.info(f"multiplier search stopped after {self.tried} LPs")
                            return
                        self.tried += 1
                        found = solve_branch(self.P, self.x, choice, h_vectors, branches, family)
                        if found is not None:
                            yield found
                            break


def _feas_tol(x: Sequence[Scalar], config: RunConfig) -> float:
    return config.feas_tol if is_exact(x) else config.feas_tol_float


def enumerate_multipliers(
    P: Program,
    x: Sequence[Scalar],
    config: RunConfig | None = None,
    h_indices: Sequence[int] | None = None,
    subgradients: Subgradients | None = None,
) -> list[Multiplier]:
    """Every degenerate multiplier, one per branch family.

    J defaults to the greedy basis of {∇h_j(x̄)}.
    """
    config = config or RunConfig.from_settings()
    if h_indices is None:
        _, h_vectors = exact_gradients(P, x)
        h_indices = independent_indices(h_vectors)
    search = MultiplierSearch(P, x, config, h_indices, subgradients=subgradients)
    found = list(search)
    logger.debug(f"{len(found)} multipliers from {search.tried} LPs")
    return found
