"""Exact two-phase simplex over the rationals with Bland's anti-cycling rule."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

from core.linalg import Vector, dot, to_fraction

logger = logging.getLogger(__name__)

MAX_PIVOTS = 100_000


class LpStatus(StrEnum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    x: Vector | None = None
    value: Fraction | None = None

    @property
    def success(self) -> bool:
        return self.status == LpStatus.OPTIMAL


class SimplexTableau:
    """Dense tableau; ``rows[i]`` is constraint i, ``rhs[i]`` its right-hand side."""

    def __init__(
        self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]
    ) -> None:
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def pivot(self, i: int, j: int) -> None:
        piv = self.rows[i][j]
        self.rows[i] = [a / piv for a in self.rows[i]]
        self.rhs[i] /= piv
        for k, row in enumerate(self.rows):
            if k != i and row[j] != 0:
                f = row[j]
                self.rows[k] = [a - f * b for a, b in zip(row, self.rows[i])]
                self.rhs[k] -= f * self.rhs[i]
        self.basis[i] = j

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        reduced = list(cost)
        for i, bv in enumerate(self.basis):
            cb = cost[bv]
            if cb:
                row = self.rows[i]
                for j in range(self.ncols):
                    if row[j]:
                        reduced[j] -= cb * row[j]
        return reduced

    def bland_step(self, cost: Sequence[Fraction]) -> str:
        reduced = self.reduced_costs(cost)
        entering = next((j for j in range(self.ncols) if reduced[j] < 0), None)
        if entering is None:
            return "optimal"
        candidates = [
            (self.rhs[i] / row[entering], self.basis[i], i)
            for i, row in enumerate(self.rows)
            if row[entering] > 0
        ]
        if not candidates:
            return "unbounded"
        _, _, leaving = min(candidates)
        self.pivot(leaving, entering)
        return "go_on"

    def run(self, cost: Sequence[Fraction]) -> str:
        for _ in range(MAX_PIVOTS):
            status = self.bland_step(cost)
            if status != "go_on":
                return status
        raise RuntimeError("simplex exceeded the pivot limit")

    def solution(self, n: int) -> list[Fraction]:
        x = [Fraction(0)] * n
        for i, bv in enumerate(self.basis):
            if bv < n:
                x[bv] = self.rhs[i]
        return x


def solve_standard(
    c: Sequence[Fraction], A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]
) -> LpResult:
    """Minimize c·x subject to A·x = b, x ≥ 0."""
    n, m = len(c), len(A)
    cost = [to_fraction(v) for v in c]
    if m == 0:
        if any(v < 0 for v in cost):
            return LpResult(LpStatus.UNBOUNDED)
        return LpResult(LpStatus.OPTIMAL, tuple(Fraction(0) for _ in range(n)), Fraction(0))

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i, (row, bi) in enumerate(zip(A, b, strict=True)):
        row = [to_fraction(a) for a in row]
        bi = to_fraction(bi)
        if bi < 0:
            row, bi = [-a for a in row], -bi
        rows.append(row + [Fraction(int(k == i)) for k in range(m)])
        rhs.append(bi)

    tableau = SimplexTableau(rows, rhs, [n + i for i in range(m)])
    tableau.run([Fraction(0)] * n + [Fraction(1)] * m)
    artificial = (tableau.rhs[i] for i, bv in enumerate(tableau.basis) if bv >= n)
    infeasibility = sum(artificial, Fraction(0))
    if infeasibility > 0:
        return LpResult(LpStatus.INFEASIBLE)

    for i in range(m):
        if tableau.basis[i] >= n:
            j = next((j for j in range(n) if tableau.rows[i][j] != 0), None)
            if j is not None:
                tableau.pivot(i, j)
    keep = [i for i in range(m) if tableau.basis[i] < n]
    if len(keep) < m:
        logger.debug(f"dropping {m - len(keep)} redundant equality rows")
    phase2 = SimplexTableau(
        [tableau.rows[i][:n] for i in keep],
        [tableau.rhs[i] for i in keep],
        [tableau.basis[i] for i in keep],
    )
    if phase2.rows:
        status = phase2.run(cost)
    else:
        status = "unbounded" if any(v < 0 for v in cost) else "optimal"
    if status == "unbounded":
        return LpResult(LpStatus.UNBOUNDED)
    x = phase2.solution(n)
    return LpResult(LpStatus.OPTIMAL, tuple(x), dot(cost, x))


def solve_lp(
    c: Sequence[object],
    A_ub: Sequence[Sequence[object]] | None = None,
    b_ub: Sequence[object] | None = None,
    A_eq: Sequence[Sequence[object]] | None = None,
    b_eq: Sequence[object] | None = None,
    free: Sequence[bool] | None = None,
) -> LpResult:
    """Minimize c·x subject to A_ub·x ≤ b_ub and A_eq·x = b_eq.

    Variables are nonnegative unless flagged in ``free``. Free variables are
    split into positive and negative parts; inequality rows get slacks.
    """
    n = len(c)
    free = list(free) if free is not None else [False] * n
    A_ub, b_ub = list(A_ub or []), list(b_ub or [])
    A_eq, b_eq = list(A_eq or []), list(b_eq or [])

    columns: list[tuple[int, int]] = []
    for j in range(n):
        columns.append((j, 1))
        if free[j]:
            columns.append((j, -1))
    n_struct = len(columns)
    n_slack = len(A_ub)

    def expand(row: Sequence[object]) -> list[Fraction]:
        vals = [to_fraction(v) for v in row]
        return [sign * vals[j] for j, sign in columns]

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for k, (row, bk) in enumerate(zip(A_ub, b_ub, strict=True)):
        rows.append(expand(row) + [Fraction(int(s == k)) for s in range(n_slack)])
        rhs.append(to_fraction(bk))
    for row, bk in zip(A_eq, b_eq, strict=True):
        rows.append(expand(row) + [Fraction(0)] * n_slack)
        rhs.append(to_fraction(bk))

    cost = expand(c) + [Fraction(0)] * n_slack
    result = solve_standard(cost, rows, rhs)
    if not result.success:
        return LpResult(result.status)
    x = [Fraction(0)] * n
    for (j, sign), value in zip(columns, result.x[:n_struct]):
        x[j] += sign * value
    return LpResult(LpStatus.OPTIMAL, tuple(x), result.value)
