"""Operations behind the command line and the HTTP service.

Each function takes a loaded program and returns a pydantic report; the
callers only parse input and render output.
"""

import logging
from collections.abc import Sequence

from core.errors import DimensionMismatchError, TagMismatchError
from core.linalg import as_vector
from cq import check
from disjunctive import limiting_nc, regular_nc
from errorbound import estimate_error_bound
from geometry import ConeGenerators, canonical
from model import OrthoProgram, Program, block_points
from ortho import as_program, check_ortho
from schema import (
    CheckResult,
    CqReport,
    ErrorBoundEstimate,
    MStatReport,
    NormalConeKind,
    NormalConeReport,
    OrthoCqName,
    RunConfig,
    StratumRecord,
    Verdict,
)
from stationarity import mstationarity_report

logger = logging.getLogger(__name__)

ORTHO_NAMES = {c.value for c in OrthoCqName}


def parse_point(text: str) -> tuple:
    """``"0,1/2,-3"`` as a tuple of rationals."""
    parts = [p.strip() for p in text.split(",")]
    if not text.strip() or any(not p for p in parts):
        raise ValueError(f"not a point: {text!r}")
    return as_vector(parts)


def generic(P: Program | OrthoProgram) -> Program:
    return as_program(P) if isinstance(P, OrthoProgram) else P


def exit_code(verdicts: Sequence[Verdict]) -> int:
    if Verdict.FAILS_WITNESSED in verdicts:
        return 1
    if Verdict.INCONCLUSIVE in verdicts:
        return 2
    return 0


def run_check(
    P: Program | OrthoProgram, x: Sequence[object], cq: str, config: RunConfig
) -> CqReport:
    """Ortho names go to the specialized checkers; the rest run on the full program."""
    if cq.lower() in ORTHO_NAMES:
        if not isinstance(P, OrthoProgram):
            raise TagMismatchError(f"{cq} needs a program with kind mpec, mpvc or mpsc")
        return check_ortho(cq, P, x, config)
    return check(cq, generic(P), x, config)


def run_checks(
    P: Program | OrthoProgram, x: Sequence[object], cqs: Sequence[str], config: RunConfig
) -> CheckResult:
    reports = [run_check(P, x, cq, config) for cq in cqs]
    return CheckResult(reports=reports, exit_code=exit_code([r.verdict for r in reports]))


def _fields(cone: ConeGenerators) -> dict:
    return {"rays": [list(r) for r in cone.rays], "lines": [list(v) for v in cone.lines]}


def normal_cone(
    P: Program | OrthoProgram,
    x: Sequence[object],
    block: int = 0,
    kind: NormalConeKind = NormalConeKind.LIMITING,
    config: RunConfig | None = None,
) -> NormalConeReport:
    """Regular or limiting normal cone of block ``block`` at Φ_i(x̄)."""
    config = config or RunConfig.from_settings()
    P = generic(P)
    if not 0 <= block < len(P.blocks):
        raise DimensionMismatchError(
            f"block {block + 1} requested, the program has {len(P.blocks)}"
        )
    b = P.blocks[block]
    y = block_points(P, x, config.feas_tol)[block]
    if kind == NormalConeKind.REGULAR:
        cone = canonical(regular_nc(b.gamma, y))
        return NormalConeReport(kind=kind, block=block, point=list(y), **_fields(cone))
    L = limiting_nc(b.gamma, y)
    strata = [
        StratumRecord(point=list(s.point), pieces=list(s.pieces), **_fields(s.cone))
        for s in L.strata
    ]
    logger.info(f"block {block + 1}: {len(strata)} strata")
    return NormalConeReport(
        kind=kind,
        block=block,
        point=list(y),
        rays=[list(r) for r in L.rays],
        lines=[list(v) for v in L.lines],
        strata=strata,
    )


def mstat(
    P: Program | OrthoProgram,
    x: Sequence[object],
    config: RunConfig | None = None,
    every: bool = False,
) -> MStatReport:
    return mstationarity_report(generic(P), x, config, every=every)


def errorbound(
    P: Program | OrthoProgram,
    x: Sequence[object],
    eps: object = "1/10",
    samples: int = 1000,
    seed: int | None = None,
    config: RunConfig | None = None,
) -> ErrorBoundEstimate:
    return estimate_error_bound(generic(P), x, eps=eps, samples=samples, seed=seed, config=config)
