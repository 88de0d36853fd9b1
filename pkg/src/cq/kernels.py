"""Exact positive-linear-dependence and Carathéodory kernels."""

import logging
from collections.abc import Sequence
from fractions import Fraction
from typing import NamedTuple

from core.errors import RepresentationError
from core.linalg import (
    Vector,
    as_vector,
    check_dims,
    combine,
    is_independent,
    null_combination,
    sub,
    to_fraction,
)
from core.lp import solve_lp

logger = logging.getLogger(__name__)


class Dependence(NamedTuple):
    """Σ alpha_i·signed_i + Σ beta_j·free_j = 0 with alpha ≥ 0, not all zero."""

    alpha: Vector
    beta: Vector


def positive_linear_dependent(
    signed: Sequence[Sequence[object]], free: Sequence[Sequence[object]]
) -> Dependence | None:
    """Coefficients showing (signed, free) is positive linearly dependent, or None.

    A dependent free family gives its exact null vector with alpha = 0; otherwise
    the LP normalizes Σ alpha = 1.
    """
    signed = [as_vector(v) for v in signed]
    free = [as_vector(u) for u in free]
    dim = check_dims(*signed, *free)
    beta = null_combination(free) if free else None
    if beta is not None:
        return Dependence(tuple(Fraction(0) for _ in signed), beta)
    if not signed:
        return None
    n_a, n_b = len(signed), len(free)
    columns = signed + free
    A_eq = [[v[k] for v in columns] for k in range(dim)]
    A_eq.append([1] * n_a + [0] * n_b)
    b_eq = [0] * dim + [1]
    result = solve_lp(
        [0] * (n_a + n_b), A_eq=A_eq, b_eq=b_eq, free=[False] * n_a + [True] * n_b
    )
    if not result.success:
        return None
    return Dependence(tuple(result.x[:n_a]), tuple(result.x[n_a:]))


class Reduction(NamedTuple):
    base_coeffs: Vector
    kept: tuple[int, ...]
    coeffs: Vector


def caratheodory_reduce(
    v: Sequence[object],
    base: Sequence[Sequence[object]],
    extras: Sequence[tuple[Sequence[object], object]],
) -> Reduction:
    """Rewrite v = Σ μ_j·base_j + Σ ᾱ_i·extra_i over an independent family.

    The retained extras keep the sign of their original coefficient, and base
    together with the retained extras is linearly independent.
    """
    v = as_vector(v)
    base = [as_vector(b) for b in base]
    vectors = [as_vector(u) for u, _ in extras]
    alpha = [to_fraction(a) for _, a in extras]
    dim = check_dims(v, *base, *vectors)
    if not is_independent(base):
        raise RepresentationError("base vectors must be linearly independent")
    rest = combine(alpha, vectors, dim) if vectors else tuple(Fraction(0) for _ in v)
    gamma = null_combination([*base, sub(v, rest)])
    if gamma is None:
        raise RepresentationError("v is not representable over the given vectors")
    mu = [-g / gamma[-1] for g in gamma[:-1]]

    kept = [i for i, a in enumerate(alpha) if a != 0]
    steps = 0
    while True:
        family = base + [vectors[i] for i in kept]
        gamma = null_combination(family)
        if gamma is None:
            break
        steps += 1
        g_base, g_kept = gamma[: len(base)], gamma[len(base):]
        # orient so that some retained coefficient moves toward zero
        if not any(g * alpha[i] > 0 for g, i in zip(g_kept, kept)):
            g_base = [-g for g in g_base]
            g_kept = [-g for g in g_kept]
        t = min(alpha[i] / g for g, i in zip(g_kept, kept) if g * alpha[i] > 0)
        mu = [m - t * g for m, g in zip(mu, g_base)]
        for g, i in zip(g_kept, kept):
            alpha[i] -= t * g
        kept = [i for i in kept if alpha[i] != 0]
    logger.debug(f"Carathéodory reduction: {steps} eliminations, {len(kept)} extras kept")
    return Reduction(tuple(mu), tuple(kept), tuple(alpha[i] for i in kept))
