"""RCPLD and its piecewise variant for MPEC, MPVC and MPSC.

The checkers localize the program, then run the multiplier search over sign
patterns of (η_G, η_H) on the biactive pairs instead of over normal-cone
strata. Witnesses refer to ``to_generic(P, x̄)`` and replay there.
"""

import logging
from collections.abc import Callable, Sequence
from itertools import combinations, product

from core.errors import TagMismatchError, UnknownCqError
from core.linalg import as_vector, independent_indices, is_exact
from cq import DependenceTests, ScanStatus, VectorFamily, rank_constancy
from cq.multipliers import BlockBranch, exact_gradients, solve_branch
from disjunctive import Family
from model import OrthoKind, OrthoProgram, active_inequalities, point
from ortho.cones import SIGN_TABLES, pattern_generators
from ortho.index_sets import classify, to_generic
from schema import CqReport, OrthoCqName, RunConfig, Verdict, Witness, WitnessKind

logger = logging.getLogger(__name__)

KINDS = {
    OrthoCqName.MPEC_RCPLD: OrthoKind.MPEC,
    OrthoCqName.MPEC_PRCPLD: OrthoKind.MPEC,
    OrthoCqName.MPVC_RCPLD: OrthoKind.MPVC,
    OrthoCqName.MPVC_PRCPLD: OrthoKind.MPVC,
    OrthoCqName.MPSC_RCPLD: OrthoKind.MPSC,
}


def _report(name: OrthoCqName, verdict: Verdict, x, config: RunConfig, **fields) -> CqReport:
    report = CqReport(
        cq=str(name), verdict=verdict, point=list(as_vector(x)), scheme=config.scheme, **fields
    )
    logger.info(f"{name} at {x}: {verdict}")
    return report


def _sign_search(
    name: OrthoCqName, P: OrthoProgram, x: Sequence[object], config: RunConfig | None
) -> CqReport:
    if P.kind != KINDS[name]:
        raise TagMismatchError(f"{name} needs a {KINDS[name]} program, got {P.kind}")
    config = config or RunConfig.from_settings()
    x = point(x)
    tol = config.feas_tol if is_exact(x) else config.feas_tol_float
    idx = classify(P, x, tol)
    local = to_generic(P, x, tol)
    notes = idx.notes()

    rc = rank_constancy(local, x, config)
    if rc.constant is False:
        family = VectorFamily(h=tuple(range(len(local.h))))
        witness = Witness(
            kind=WitnessKind.RANK,
            family=family.to_model(),
            sequence=rc.violation.to_model(family.size, rc.rank_at_center),
        )
        notes.append("the gradients of the localized equalities change rank near the point")
        return _report(name, Verdict.FAILS_WITNESSED, x, config, witness=witness, notes=notes)
    g_all, h_all = exact_gradients(local, x)
    J = tuple(independent_indices(h_all))
    h_vectors = [h_all[j] for j in J]
    active = active_inequalities(local, x, tol)
    table = SIGN_TABLES[name]
    tests = DependenceTests(local, x, config)
    tried = candidates = 0
    capped = False
    for size in range(len(active) + 1):
        for I in combinations(active, size):
            g_vectors = [g_all[i] for i in I]
            for patterns in product(table, repeat=len(local.blocks)):
                if not I and all(p == (0, 0) for p in patterns):
                    continue
                generators = tuple(pattern_generators(p) for p in patterns)
                family = VectorFamily(I, J, generators)
                if tests.known(family):
                    continue
                if tried >= config.candidate_cap:
                    capped = True
                    break
                tried += 1
                branches = [
                    BlockBranch(Family(rays=gens), gens, (1,) * len(gens)) for gens in generators
                ]
                m = solve_branch(local, x, g_vectors, h_vectors, branches, family)
                if m is None:
                    continue
                candidates += 1
                result = tests.run(family)
                if result.status == ScanStatus.WITNESS:
                    witness = Witness(
                        kind=WitnessKind.MULTIPLIER,
                        family=family.to_model(),
                        candidate=m.to_model(),
                        sequence=result.to_model(family.size),
                    )
                    return _report(
                        name,
                        Verdict.FAILS_WITNESSED,
                        x,
                        config,
                        witness=witness,
                        candidates=candidates,
                        families=len(tests.results),
                        notes=notes,
                    )
            if capped:
                break
        if capped:
            break
    logger.debug(f"{name}: {tried} sign patterns, {candidates} candidates")
    doubts = []
    if tests.mixed:
        doubts.append(f"{tests.mixed} families are neither settled nor witnessed by the sequences")
    if capped:
        doubts.append(f"stopped at the candidate cap of {config.candidate_cap}")
    if rc.constant is None:
        doubts.append("the rank of the localized equality gradients is not settled")
    return _report(
        name,
        Verdict.INCONCLUSIVE if doubts else Verdict.HOLDS_SAMPLED,
        x,
        config,
        candidates=candidates,
        families=len(tests.results),
        notes=notes + doubts,
    )


def check_mpec_rcpld(P: OrthoProgram, x, config: RunConfig | None = None) -> CqReport:
    """Biactive multipliers: both negative, or one of them zero."""
    return _sign_search(OrthoCqName.MPEC_RCPLD, P, x, config)


def check_mpec_prcpld(P: OrthoProgram, x, config: RunConfig | None = None) -> CqReport:
    """Biactive multipliers: at least one of them nonpositive."""
    return _sign_search(OrthoCqName.MPEC_PRCPLD, P, x, config)


def check_mpvc_rcpld(P: OrthoProgram, x, config: RunConfig | None = None) -> CqReport:
    return _sign_search(OrthoCqName.MPVC_RCPLD, P, x, config)


def check_mpvc_prcpld(P: OrthoProgram, x, config: RunConfig | None = None) -> CqReport:
    return _sign_search(OrthoCqName.MPVC_PRCPLD, P, x, config)


def check_mpsc_rcpld(P: OrthoProgram, x, config: RunConfig | None = None) -> CqReport:
    """Serves the piecewise variant as well: on switching pairs the two coincide."""
    report = _sign_search(OrthoCqName.MPSC_RCPLD, P, x, config)
    report.notes.append("coincides with the piecewise variant")
    return report


ORTHO_CHECKERS: dict[OrthoCqName, Callable[..., CqReport]] = {
    OrthoCqName.MPEC_RCPLD: check_mpec_rcpld,
    OrthoCqName.MPEC_PRCPLD: check_mpec_prcpld,
    OrthoCqName.MPVC_RCPLD: check_mpvc_rcpld,
    OrthoCqName.MPVC_PRCPLD: check_mpvc_prcpld,
    OrthoCqName.MPSC_RCPLD: check_mpsc_rcpld,
}


def check_ortho(
    name: str | OrthoCqName, P: OrthoProgram, x, config: RunConfig | None = None
) -> CqReport:
    try:
        cq = OrthoCqName(str(name).lower())
    except ValueError:
        raise UnknownCqError(
            f"unknown ortho checker {name!r}; choose from "
            + ", ".join(c.value for c in OrthoCqName)
        ) from None
    return ORTHO_CHECKERS[cq](P, x, config)
