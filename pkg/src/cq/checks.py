"""Constraint-qualification checkers.

Every checker returns a ``CqReport``. Failures carry a witness that
``replay_witness`` re-derives from the program alone; successes are sampled
claims except for LICQ and NNAMCQ, which are decided at the point itself.
"""

import logging
from collections.abc import Callable, Iterator, Sequence
from fractions import Fraction
from itertools import combinations, product

from core.errors import UnknownCqError
from core.linalg import (
    Scalar,
    Vector,
    as_vector,
    combine,
    independent_indices,
    is_exact,
    is_zero,
    null_combination,
)
from cq.kernels import positive_linear_dependent
from cq.multipliers import Multiplier, MultiplierSearch, block_generators, exact_gradients
from cq.sequences import (
    RankConstancy,
    Scan,
    ScanStatus,
    Subgradients,
    VectorFamily,
    constancy_scan,
    dependence_scan,
    family_rank,
    rank_constancy,
    sample_point,
)
from disjunctive import Family, admissible_families, piece_normal_cones
from model import (
    Partition,
    Program,
    active_inequalities,
    admissible_partitions,
    block_points,
    point,
    require_feasible,
    subsystem,
)
from schema import CqName, CqReport, RunConfig, SubsystemVerdict, Verdict, Witness, WitnessKind

logger = logging.getLogger(__name__)

Point = tuple[Scalar, ...]

# (stronger, weaker): a point where the first holds is one where the second holds
CQ_IMPLICATIONS: list[tuple[CqName, CqName]] = [
    (CqName.LICQ, CqName.NNAMCQ),
    (CqName.NNAMCQ, CqName.CPLD),
    (CqName.CPLD, CqName.RCPLD),
    (CqName.CRCQ, CqName.RCRCQ),
    (CqName.CRCQ, CqName.CPLD),
    (CqName.RCRCQ, CqName.ERCPLD),
    (CqName.ERCPLD, CqName.RCPLD),
]

# reported side by side, never asserted
REPORTED_IMPLICATIONS: list[tuple[CqName, CqName]] = [(CqName.LICQ, CqName.PRCPLD)]


def _feas_tol(x: Sequence[Scalar], config: RunConfig) -> float:
    return config.feas_tol if is_exact(x) else config.feas_tol_float


def _prepare(P: Program, x: Sequence[object], config: RunConfig | None) -> tuple[Point, RunConfig]:
    config = config or RunConfig.from_settings()
    x = point(x)
    return require_feasible(P, x, _feas_tol(x, config)), config


def _report(name: CqName, verdict: Verdict, x: Point, config: RunConfig, **fields) -> CqReport:
    report = CqReport(
        cq=str(name), verdict=verdict, point=list(as_vector(x)), scheme=config.scheme, **fields
    )
    logger.info(f"{name} at {x}: {verdict}")
    return report


def _subsets(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    for size in range(len(items) + 1):
        yield from combinations(items, size)


def _members(f: VectorFamily) -> tuple[set, set, set]:
    g = set(zip(f.g, f.g_choice)) if f.g_choice else set(f.g)
    gens = {(i, b) for i, betas in enumerate(f.generators) for b in betas}
    return g, set(f.h), gens


def _includes(big: VectorFamily, small: VectorFamily) -> bool:
    return all(s <= b for s, b in zip(_members(small), _members(big)))


class DependenceTests:
    """Dependence scans memoized per family.

    A family that stays dependent along every sampled sequence makes each of
    its supersets dependent there too, so those are never scanned.
    """

    def __init__(
        self,
        P: Program,
        x: Point,
        config: RunConfig,
        subgradients: Subgradients | None = None,
    ) -> None:
        self.P = P
        self.x = x
        self.config = config
        self.subgradients = subgradients
        self.results: dict[VectorFamily, Scan] = {}
        self.dependent: list[VectorFamily] = []
        self.mixed = 0

    def known(self, family: VectorFamily) -> bool:
        return family in self.results or any(_includes(family, d) for d in self.dependent)

    def run(self, family: VectorFamily) -> Scan:
        if family in self.results:
            return self.results[family]
        result = dependence_scan(self.P, family, self.x, self.config, self.subgradients)
        self.results[family] = result
        if result.status == ScanStatus.CLEAN:
            self.dependent.append(family)
        elif result.status == ScanStatus.MIXED:
            self.mixed += 1
        return result


def _rank_witness(P: Program, rc: RankConstancy) -> Witness:
    family = VectorFamily(h=tuple(range(len(P.h))))
    return Witness(
        kind=WitnessKind.RANK,
        family=family.to_model(),
        sequence=rc.violation.to_model(family.size, rc.rank_at_center),
    )


def _multiplier_witness(m: Multiplier, scan: Scan) -> Witness:
    return Witness(
        kind=WitnessKind.MULTIPLIER,
        family=m.family.to_model(),
        candidate=m.to_model(),
        sequence=scan.to_model(m.family.size),
    )


def _doubts(tests_mixed: int, capped: bool, config: RunConfig) -> list[str]:
    doubts = []
    if tests_mixed:
        doubts.append(f"{tests_mixed} families are neither settled nor witnessed by the sequences")
    if capped:
        doubts.append(f"stopped at the candidate cap of {config.candidate_cap}")
    return doubts


def _zero_etas(P: Program) -> tuple[Vector, ...]:
    return tuple(tuple(Fraction(0) for _ in range(b.gamma.dim)) for b in P.blocks)


def _pld_check(
    name: CqName,
    P: Program,
    x: Point,
    config: RunConfig,
    subgradients: Subgradients | None,
    every_h_subset: bool,
) -> CqReport:
    # CPLD ranges over every subset of h and carries no separate rank condition
    rc = rank_constancy(P, x, config) if not every_h_subset else None
    if rc is not None and rc.constant is False:
        return _report(
            name,
            Verdict.FAILS_WITNESSED,
            x,
            config,
            witness=_rank_witness(P, rc),
            notes=["the gradients of h change rank near the point"],
        )
    doubts = [] if rc is None or rc.constant else ["the rank of the gradients of h is not settled"]
    _, h_vectors = exact_gradients(P, x)
    if every_h_subset:
        h_sets = list(_subsets(range(len(P.h))))
    else:
        h_sets = [tuple(independent_indices(h_vectors))]

    tests = DependenceTests(P, x, config, subgradients)
    budget = config.candidate_cap
    candidates = 0
    capped = False
    for J in h_sets:
        null = null_combination([h_vectors[j] for j in J]) if J else None
        if null is not None:
            # ∇h_J alone is dependent; a superset only matters if ∇h_J stops being so
            family = VectorFamily(h=J)
            if tests.known(family):
                continue
            candidates += 1
            m = Multiplier(family, (), null, _zero_etas(P), (Family(),) * len(P.blocks), null)
            result = tests.run(family)
            if result.status == ScanStatus.WITNESS:
                return _report(
                    name,
                    Verdict.FAILS_WITNESSED,
                    x,
                    config,
                    witness=_multiplier_witness(m, result),
                    candidates=candidates,
                    families=len(tests.results),
                )
            continue
        search = MultiplierSearch(
            P, x, config, J, budget=budget, subgradients=subgradients, skip=tests.known
        )
        for m in search:
            candidates += 1
            result = tests.run(m.family)
            if result.status == ScanStatus.WITNESS:
                return _report(
                    name,
                    Verdict.FAILS_WITNESSED,
                    x,
                    config,
                    witness=_multiplier_witness(m, result),
                    candidates=candidates,
                    families=len(tests.results),
                )
        budget -= search.tried
        if search.capped:
            capped = True
            break
    doubts += _doubts(tests.mixed, capped, config)
    return _report(
        name,
        Verdict.INCONCLUSIVE if doubts else Verdict.HOLDS_SAMPLED,
        x,
        config,
        candidates=candidates,
        families=len(tests.results),
        notes=doubts,
    )


def check_rcpld(
    P: Program,
    x: Sequence[object],
    config: RunConfig | None = None,
    subgradients: Subgradients | None = None,
) -> CqReport:
    """Relaxed constant positive linear dependence at ``x``.

    ``subgradients(i, x)`` replaces ∇g_i by a finite set of subgradients for
    nonsmooth inequalities; along a sequence the sample nearest to the
    subgradient chosen at ``x`` is used.
    """
    x, config = _prepare(P, x, config)
    return _pld_check(CqName.RCPLD, P, x, config, subgradients, every_h_subset=False)


def check_cpld(
    P: Program,
    x: Sequence[object],
    config: RunConfig | None = None,
    subgradients: Subgradients | None = None,
) -> CqReport:
    """Constant positive linear dependence: every subset of equalities, not only a basis."""
    x, config = _prepare(P, x, config)
    return _pld_check(CqName.CPLD, P, x, config, subgradients, every_h_subset=True)


def check_prcpld(
    P: Program,
    x: Sequence[object],
    config: RunConfig | None = None,
    subgradients: Subgradients | None = None,
) -> CqReport:
    """RCPLD on the subsystem of every admissible partition."""
    x, config = _prepare(P, x, config)
    verdicts = []
    witness = None
    candidates = families = 0
    notes = []
    for part in admissible_partitions(P, x, _feas_tol(x, config)):
        report = _pld_check(
            CqName.RCPLD, subsystem(P, part), x, config, subgradients, every_h_subset=False
        )
        candidates += report.candidates
        families += report.families
        pieces = list(part.assignment)
        verdicts.append(SubsystemVerdict(partition=pieces, verdict=report.verdict))
        if report.verdict == Verdict.FAILS_WITNESSED and witness is None:
            witness = report.witness.model_copy(update={"partition": pieces})
        notes.extend(f"subsystem {part}: {n}" for n in report.notes)
    if witness is not None:
        verdict = Verdict.FAILS_WITNESSED
    elif all(v.verdict == Verdict.HOLDS_SAMPLED for v in verdicts):
        verdict = Verdict.HOLDS_SAMPLED
    else:
        verdict = Verdict.INCONCLUSIVE
    return _report(
        CqName.PRCPLD,
        verdict,
        x,
        config,
        witness=witness,
        candidates=candidates,
        families=families,
        subsystems=verdicts,
        notes=notes,
    )


def check_licq(P: Program, x: Sequence[object], config: RunConfig | None = None) -> CqReport:
    """Independence of ∇g_Ī, ∇h and ∇Φ_iᵀ applied to Σ_r span N̂_{C_r}(Φ_i(x̄)).

    Decided exactly at the point; a failure carries the null combination.
    """
    x, config = _prepare(P, x, config)
    tol = 0 if is_exact(x) else config.feas_tol_float
    generators = []
    for block, y in zip(P.blocks, block_points(P, x, _feas_tol(x, config))):
        cones = piece_normal_cones(block.gamma, y, tol)
        spanning = [as_vector(v) for c in cones.values() for v in (*c.rays, *c.lines)]
        generators.append(tuple(spanning[k] for k in independent_indices(spanning)))
    active = active_inequalities(P, x, _feas_tol(x, config))
    family = VectorFamily(tuple(active), tuple(range(len(P.h))), tuple(generators))
    vectors = [as_vector(v) for v in family.vectors(P, x)]
    null = null_combination(vectors)
    if null is None:
        return _report(
            CqName.LICQ, Verdict.HOLDS_SAMPLED, x, config, notes=["decided exactly at the point"]
        )
    witness = Witness(
        kind=WitnessKind.CERTIFICATE, family=family.to_model(), certificate=list(null)
    )
    return _report(CqName.LICQ, Verdict.FAILS_WITNESSED, x, config, witness=witness)


def check_nnamcq(P: Program, x: Sequence[object], config: RunConfig | None = None) -> CqReport:
    """No nonzero abnormal multiplier: decided exactly by the branch LPs at the point."""
    x, config = _prepare(P, x, config)
    _, h_vectors = exact_gradients(P, x)
    null = null_combination(h_vectors)
    if null is not None:
        family = VectorFamily(h=tuple(range(len(P.h))))
        witness = Witness(
            kind=WitnessKind.CERTIFICATE, family=family.to_model(), certificate=list(null)
        )
        return _report(CqName.NNAMCQ, Verdict.FAILS_WITNESSED, x, config, witness=witness)
    search = MultiplierSearch(P, x, config, range(len(P.h)), g_subsets=False)
    for m in search:
        witness = Witness(
            kind=WitnessKind.CERTIFICATE,
            family=m.family.to_model(),
            candidate=m.to_model(),
            certificate=list(m.coeffs),
        )
        return _report(
            CqName.NNAMCQ, Verdict.FAILS_WITNESSED, x, config, witness=witness, candidates=1
        )
    if search.capped:
        return _report(
            CqName.NNAMCQ,
            Verdict.INCONCLUSIVE,
            x,
            config,
            notes=_doubts(0, True, config),
        )
    return _report(
        CqName.NNAMCQ, Verdict.HOLDS_SAMPLED, x, config, notes=["decided exactly at the point"]
    )


def _families(
    P: Program, x: Point, config: RunConfig, h_sets: Sequence[tuple[int, ...]]
) -> Iterator[VectorFamily]:
    active = active_inequalities(P, x, _feas_tol(x, config))
    per_block = [admissible_families(L) for L in block_generators(P, x, config)]
    seen = set()
    for I, J, chosen in product(_subsets(active), h_sets, product(*per_block)):
        family = VectorFamily(I, J, tuple((*f.rays, *f.lines) for f in chosen))
        if family.is_empty() or family in seen:
            continue
        seen.add(family)
        yield family


def _constant_rank_check(
    name: CqName, P: Program, x: Sequence[object], config: RunConfig | None, every_h_subset: bool
) -> CqReport:
    x, config = _prepare(P, x, config)
    m = len(P.h)
    h_sets = list(_subsets(range(m))) if every_h_subset else [tuple(range(m))]
    tested = mixed = 0
    capped = False
    for family in _families(P, x, config, h_sets):
        if tested >= config.candidate_cap:
            capped = True
            break
        tested += 1
        at_center, result = constancy_scan(P, family, x, config)
        if result.status == ScanStatus.WITNESS:
            witness = Witness(
                kind=WitnessKind.RANK,
                family=family.to_model(),
                sequence=result.to_model(family.size, at_center),
            )
            return _report(
                name, Verdict.FAILS_WITNESSED, x, config, witness=witness, families=tested
            )
        if result.status == ScanStatus.MIXED:
            mixed += 1
    doubts = _doubts(mixed, capped, config)
    return _report(
        name,
        Verdict.INCONCLUSIVE if doubts else Verdict.HOLDS_SAMPLED,
        x,
        config,
        families=tested,
        notes=doubts,
    )


def check_crcq(P: Program, x: Sequence[object], config: RunConfig | None = None) -> CqReport:
    """Constant rank of every family over all inequality and equality subsets."""
    return _constant_rank_check(CqName.CRCQ, P, x, config, every_h_subset=True)


def check_rcrcq(P: Program, x: Sequence[object], config: RunConfig | None = None) -> CqReport:
    """Constant rank with every equality gradient always included."""
    return _constant_rank_check(CqName.RCRCQ, P, x, config, every_h_subset=False)


def check_ercpld(P: Program, x: Sequence[object], config: RunConfig | None = None) -> CqReport:
    """Enhanced RCPLD: positive dependence with the normal-cone vectors left sign-free."""
    x, config = _prepare(P, x, config)
    rc = rank_constancy(P, x, config)
    if rc.constant is False:
        return _report(
            CqName.ERCPLD,
            Verdict.FAILS_WITNESSED,
            x,
            config,
            witness=_rank_witness(P, rc),
            notes=["the gradients of h change rank near the point"],
        )
    doubts = [] if rc.constant else ["the rank of the gradients of h is not settled"]
    _, h_vectors = exact_gradients(P, x)
    basis = (tuple(independent_indices(h_vectors)),)
    tests = DependenceTests(P, x, config)
    tried = candidates = 0
    capped = False
    for family in _families(P, x, config, basis):
        if tests.known(family):
            continue
        if tried >= config.candidate_cap:
            capped = True
            break
        tried += 1
        vectors = [as_vector(v) for v in family.vectors(P, x)]
        n_g = len(family.g)
        dependence = positive_linear_dependent(vectors[:n_g], vectors[n_g:])
        if dependence is None:
            continue
        candidates += 1
        result = tests.run(family)
        if result.status == ScanStatus.WITNESS:
            witness = Witness(
                kind=WitnessKind.MULTIPLIER,
                family=family.to_model(),
                sequence=result.to_model(family.size),
                certificate=[*dependence.alpha, *dependence.beta],
            )
            return _report(
                CqName.ERCPLD,
                Verdict.FAILS_WITNESSED,
                x,
                config,
                witness=witness,
                candidates=candidates,
                families=len(tests.results),
            )
    doubts += _doubts(tests.mixed, capped, config)
    return _report(
        CqName.ERCPLD,
        Verdict.INCONCLUSIVE if doubts else Verdict.HOLDS_SAMPLED,
        x,
        config,
        candidates=candidates,
        families=len(tests.results),
        notes=doubts,
    )


CHECKERS: dict[CqName, Callable[..., CqReport]] = {
    CqName.LICQ: check_licq,
    CqName.NNAMCQ: check_nnamcq,
    CqName.CRCQ: check_crcq,
    CqName.RCRCQ: check_rcrcq,
    CqName.CPLD: check_cpld,
    CqName.ERCPLD: check_ercpld,
    CqName.RCPLD: check_rcpld,
    CqName.PRCPLD: check_prcpld,
}

# checkers that accept a subgradient hook for nonsmooth g
NONSMOOTH_CHECKERS = {CqName.RCPLD, CqName.PRCPLD, CqName.CPLD}


def check(
    name: str | CqName,
    P: Program,
    x: Sequence[object],
    config: RunConfig | None = None,
    subgradients: Subgradients | None = None,
) -> CqReport:
    try:
        cq = CqName(str(name).lower())
    except ValueError:
        raise UnknownCqError(
            f"unknown constraint qualification {name!r}; choose from "
            + ", ".join(c.value for c in CqName)
        ) from None
    if subgradients is not None:
        if cq not in NONSMOOTH_CHECKERS:
            raise UnknownCqError(f"{cq} does not take subgradients")
        return CHECKERS[cq](P, x, config, subgradients)
    return CHECKERS[cq](P, x, config)


def replay_witness(
    P: Program, x: Sequence[object], report: CqReport, config: RunConfig | None = None
) -> bool:
    """Recompute a report's witness from the program and confirm it.

    Sequence witnesses must reproduce their ranks at the stored radii;
    certificates must solve their equation exactly at the point. Subgradient
    hooks are not replayed.
    """
    w = report.witness
    if w is None or w.family is None:
        return False
    config = config or RunConfig.from_settings()
    x = point(x)
    if w.partition is not None:
        P = subsystem(P, Partition(tuple(w.partition)))
    family = VectorFamily.from_model(w.family)
    if w.sequence is not None:
        s = w.sequence
        ranks = [
            family_rank(P, family, sample_point(x, s.direction, r), config) for r in s.radii
        ]
        if ranks != s.ranks:
            return False
        if w.kind == WitnessKind.RANK:
            center = family_rank(P, family, x, config)
            return center == s.center_rank and all(r != center for r in ranks)
        return all(r == family.size for r in ranks)
    if w.certificate is not None:
        vectors = [as_vector(v) for v in family.vectors(P, x)]
        coeffs = list(w.certificate)
        if len(coeffs) != len(vectors) or all(c == 0 for c in coeffs):
            return False
        return is_zero(combine(coeffs, vectors, P.dim))
    return False
