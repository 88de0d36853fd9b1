"""M-stationarity certificates.

x̄ is M-stationary when

    0 = ∇f(x̄) + Σ λ_i^g ∇g_i(x̄) + Σ λ_i^h ∇h_i(x̄) + Σ ∇Φ_i(x̄)ᵀ η̄_i

for some λ^g ≥ 0 on the active inequalities and η̄_i in the limiting normal
cone of Γ_i at Φ_i(x̄). The limiting cone is a union of stratum cones, so the
question splits into one feasibility LP per choice of stratum per block.
"""

import logging
import math
from collections.abc import Iterator, Sequence
from fractions import Fraction
from itertools import product

from core.errors import MissingObjectiveError
from core.linalg import Scalar, Vector, as_vector, combine, is_exact
from core.lp import solve_lp
from cq.multipliers import block_generators
from cq.sequences import gradient_at, jacobian_transpose
from disjunctive import Stratum, limiting_member
from model import Program, active_inequalities, block_points, point, require_feasible
from schema import BranchRecord, MStatCertificate, MStatReport, RunConfig

logger = logging.getLogger(__name__)


def _objective_gradient(P: Program, x: tuple[Scalar, ...], gradient) -> Vector:
    if gradient is not None:
        return as_vector(gradient)
    if P.objective is None:
        raise MissingObjectiveError("the program has no objective to test stationarity for")
    return as_vector(gradient_at(P.objective, x))


def _equation(
    P: Program,
    x: tuple[Scalar, ...],
    grad_f: Vector,
    g_indices: Sequence[int],
    lambda_g: Sequence[Fraction],
    lambda_h: Sequence[Fraction],
    eta: Sequence[Sequence[Fraction]],
) -> Vector:
    vectors = [grad_f]
    coeffs: list[Fraction] = [Fraction(1)]
    for i, lam in zip(g_indices, lambda_g):
        vectors.append(as_vector(gradient_at(P.g[i], x)))
        coeffs.append(lam)
    for e, lam in zip(P.h, lambda_h):
        vectors.append(as_vector(gradient_at(e, x)))
        coeffs.append(lam)
    for i, e in enumerate(eta):
        vectors.append(as_vector(jacobian_transpose(P, i, x, e)))
        coeffs.append(Fraction(1))
    return combine(coeffs, vectors, P.dim)


def _solve(
    P: Program,
    x: tuple[Scalar, ...],
    grad_f: Vector,
    active: Sequence[int],
    strata: Sequence[Stratum],
) -> MStatCertificate | None:
    g_vectors = [as_vector(gradient_at(P.g[i], x)) for i in active]
    h_vectors = [as_vector(gradient_at(e, x)) for e in P.h]
    columns = [*g_vectors, *h_vectors]
    free = [False] * len(g_vectors) + [True] * len(h_vectors)
    for i, s in enumerate(strata):
        for r in s.cone.rays:
            columns.append(as_vector(jacobian_transpose(P, i, x, r)))
            free.append(False)
        for v in s.cone.lines:
            columns.append(as_vector(jacobian_transpose(P, i, x, v)))
            free.append(True)
    A_eq = [[col[k] for col in columns] for k in range(P.dim)]
    b_eq = [-c for c in grad_f]
    result = solve_lp([0] * len(columns), A_eq=A_eq, b_eq=b_eq, free=free)
    if not result.success:
        return None
    values = list(result.x)
    n_g, n_h = len(g_vectors), len(h_vectors)
    lambda_g, lambda_h = values[:n_g], values[n_g : n_g + n_h]
    rest = values[n_g + n_h :]
    eta = []
    for s in strata:
        n = len(s.cone.rays) + len(s.cone.lines)
        weights, rest = rest[:n], rest[n:]
        zero = (Fraction(0),) * s.cone.dim
        eta.append(combine(weights, s.cone.generators, s.cone.dim) if n else zero)
    residual = _equation(P, x, grad_f, active, lambda_g, lambda_h, eta)
    return MStatCertificate(
        g_indices=list(active),
        lambda_g=lambda_g,
        h_indices=list(range(len(P.h))),
        lambda_h=lambda_h,
        eta=[list(e) for e in eta],
        strata=[BranchRecord(rays=list(s.cone.rays), lines=list(s.cone.lines)) for s in strata],
        residual=math.sqrt(sum(float(c) ** 2 for c in residual)),
    )


def certificates(
    P: Program,
    x: Sequence[object],
    config: RunConfig | None = None,
    gradient: Sequence[object] | None = None,
) -> Iterator[MStatCertificate]:
    """Certificates one stratum combination at a time, in stratum order."""
    config = config or RunConfig.from_settings()
    x = point(x)
    tol = config.feas_tol if is_exact(x) else config.feas_tol_float
    x = require_feasible(P, x, tol)
    grad_f = _objective_gradient(P, x, gradient)
    active = active_inequalities(P, x, tol)
    per_block = [L.strata for L in block_generators(P, x, config)]
    tried = 0
    for strata in product(*per_block):
        tried += 1
        found = _solve(P, x, grad_f, active, strata)
        if found is not None:
            logger.debug(f"stationarity certificate from stratum combination {tried}")
            yield found
    logger.debug(f"{tried} stratum combinations tried")


def check_mstationary(
    P: Program,
    x: Sequence[object],
    config: RunConfig | None = None,
    gradient: Sequence[object] | None = None,
) -> MStatCertificate | None:
    """The first M-stationarity certificate at ``x``, or None.

    ``gradient`` replaces ∇f(x̄), e.g. by a subgradient sample of a
    nonsmooth objective.
    """
    return next(certificates(P, x, config, gradient), None)


def verify_certificate(
    P: Program,
    x: Sequence[object],
    cert: MStatCertificate,
    config: RunConfig | None = None,
    gradient: Sequence[object] | None = None,
) -> bool:
    """Re-check a certificate from scratch: signs, cone memberships and the equation."""
    config = config or RunConfig.from_settings()
    x = point(x)
    tol = config.feas_tol if is_exact(x) else config.feas_tol_float
    x = require_feasible(P, x, tol)
    if len(cert.eta) != len(P.blocks) or len(cert.lambda_h) != len(P.h):
        return False
    if len(cert.lambda_g) != len(cert.g_indices) or any(lam < 0 for lam in cert.lambda_g):
        return False
    active = set(active_inequalities(P, x, tol))
    if not set(cert.g_indices) <= active:
        return False
    for block, y, eta in zip(P.blocks, block_points(P, x, tol), cert.eta):
        if not limiting_member(block.gamma, y, eta):
            return False
    grad_f = _objective_gradient(P, x, gradient)
    residual = _equation(P, x, grad_f, cert.g_indices, cert.lambda_g, cert.lambda_h, cert.eta)
    if is_exact(x):
        return all(c == 0 for c in residual)
    return math.sqrt(sum(float(c) ** 2 for c in residual)) <= config.lp_tol


def mstationarity_report(
    P: Program,
    x: Sequence[object],
    config: RunConfig | None = None,
    every: bool = False,
    gradient: Sequence[object] | None = None,
) -> MStatReport:
    found = certificates(P, x, config, gradient)
    if every:
        certs = list(found)
    else:
        first = next(found, None)
        certs = [first] if first is not None else []
    notes = []
    if every and len(certs) > 1:
        notes.append(f"{len(certs)} stratum combinations admit multipliers")
    return MStatReport(
        point=list(as_vector(point(x))), stationary=bool(certs), certificates=certs, notes=notes
    )
