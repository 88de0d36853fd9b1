"""Worked examples run from the frozen programs and compared with committed summaries."""

import json
import logging
from collections.abc import Callable
from pathlib import Path
from typing import Any

from core.linalg import format_vector
from cq import check_prcpld, check_rcpld
from disjunctive import (
    closed_form_nc,
    limiting_member,
    limiting_nc,
    omega_e,
    piece_normal_cones,
    regular_nc,
    uncovered_generators,
)
from expr import evaluate_gradient, jacobian
from geometry import ConeGenerators, canonical
from model import load_program
from schema import RunConfig

logger = logging.getLogger(__name__)

PROGRAMS = Path(__file__).resolve().parent / "programs"
EXPECTED = PROGRAMS / "expected"

ORIGIN3 = (0, 0, 0)
A3 = (0, 1, -1)


def describe(cone: ConeGenerators) -> str:
    cone = canonical(cone)
    parts = []
    if cone.rays:
        parts.append("cone{" + ", ".join(format_vector(r) for r in cone.rays) + "}")
    if cone.lines:
        parts.append("span{" + ", ".join(format_vector(v) for v in cone.lines) + "}")
    return " + ".join(parts) or "{0}"


def _vectors(vs) -> list[str]:
    return sorted(format_vector(v) for v in vs)


def worked_example(config: RunConfig) -> dict[str, Any]:
    P = load_program(PROGRAMS / "example41.prog")
    gamma = P.blocks[0].gamma
    L = limiting_nc(gamma, ORIGIN3)
    grad_h = [evaluate_gradient(h, ORIGIN3) for h in P.h]
    J = jacobian(P.blocks[0].map, ORIGIN3)
    phi_a3 = tuple(sum(row[k] * a for row, a in zip(J, A3)) for k in range(P.dim))
    residual = tuple(-u - v + w for u, v, w in zip(*grad_h, phi_a3))
    return {
        "regular_cone": describe(regular_nc(gamma, ORIGIN3)),
        "limiting_rays": _vectors(L.rays),
        "limiting_lines": _vectors(L.lines),
        "outside_piece_cones": _vectors(
            uncovered_generators(L, piece_normal_cones(gamma, ORIGIN3))
        ),
        "grad_h": [format_vector(g) for g in grad_h],
        "phi_transpose_a3": format_vector(phi_a3),
        "multiplier_residual": format_vector(residual),
        "rcpld": str(check_rcpld(P, ORIGIN3, config).verdict),
        "prcpld": str(check_prcpld(P, ORIGIN3, config).verdict),
    }


def omega_e_cones(config: RunConfig) -> dict[str, Any]:
    gamma = omega_e()
    points = {}
    for y in [(0, 0), (1, 0), (0, 1)]:
        L = limiting_nc(gamma, y)
        points[format_vector(y)] = {
            "regular": describe(regular_nc(gamma, y)),
            "limiting": sorted(describe(c) for c in L.stratum_set()),
            "closed_form_agrees": closed_form_nc(gamma, y).stratum_set() == L.stratum_set(),
        }
    battery = [(-1, -1), (1, 0), (0, 1), (1, 1), (-1, 1)]
    return {
        "points": points,
        "limiting_members_at_origin": {
            format_vector(v): limiting_member(gamma, (0, 0), v) for v in battery
        },
    }


EXAMPLES: dict[str, Callable[[RunConfig], dict[str, Any]]] = {
    "example-4.1": worked_example,
    "omega-e-cones": omega_e_cones,
}


def expected(example: str) -> dict[str, Any]:
    return json.loads((EXPECTED / f"{example}.json").read_text())


def differences(found: dict[str, Any], wanted: dict[str, Any]) -> list[str]:
    """Top-level keys whose values differ."""
    keys = sorted(set(found) | set(wanted))
    return [k for k in keys if found.get(k) != wanted.get(k)]


def reproduce(example: str, config: RunConfig) -> tuple[dict[str, Any], list[str]]:
    found = EXAMPLES[example](config)
    diff = differences(found, expected(example))
    if diff:
        logger.warning(f"{example}: {', '.join(diff)} differ from the committed summary")
    return found, diff
