import logging
import math
from collections.abc import Sequence
from pathlib import Path

import numpy as np
import pandas as pd

from core.linalg import to_fraction
from disjunctive import DisjunctiveSet, distance
from errorbound.distance import nearest_feasible
from model import Program, nearest_partition, point, require_feasible, residual
from schema import ErrorBoundEstimate, ProfileEntry, RunConfig, SampleRecord

logger = logging.getLogger(__name__)

# Samples with a smaller residual are left out of the ratios.
RESIDUAL_FLOOR = 1e-12
PROFILE_DIVISORS = (2, 4, 8)
MONOTONE_SLACK = 0.1


def ball_samples(
    center: Sequence[float], radius: float, count: int, rng: np.random.Generator
) -> np.ndarray:
    """``count`` uniform points in the Euclidean ball, then the half-radius axis probes."""
    n = len(center)
    c = np.array(center, dtype=float)
    d = rng.standard_normal((count, n))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    r = radius * rng.random(count) ** (1.0 / n)
    probes = np.vstack([np.eye(n), -np.eye(n)]) * (radius / 2)
    return np.vstack([c + d * r[:, None], c + probes])


def partition_gap(P: Program, x: Sequence[float]) -> float:
    """|Σ d(Φ_i(x), nearest piece) − Σ d_Γi(Φ_i(x))|, zero up to rounding."""
    part = nearest_partition(P, x)
    by_piece = 0.0
    by_set = 0.0
    for b, r in zip(P.blocks, part.assignment):
        y = b.map(x)
        piece = DisjunctiveSet((b.gamma.pieces[r],))
        by_piece += distance(piece, y)
        by_set += distance(b.gamma, y)
    return abs(by_piece - by_set)


def evaluate_sample(
    P: Program, x: Sequence[float], config: RunConfig, anchor: Sequence[object], seed: int
) -> SampleRecord:
    res = residual(P, x, config.norm)
    near = nearest_feasible(P, x, config, anchor=anchor, seed=seed)
    total = float(res.total)
    return SampleRecord(
        point=[float(v) for v in x],
        g_plus=float(res.g_plus_norm),
        h_norm=float(res.h_norm),
        gamma_dists=[float(d) for d in res.gamma_dists],
        residual=total,
        distance=near.distance,
        ratio=near.distance / total if total >= RESIDUAL_FLOOR else None,
        partition=list(near.partition.assignment) if near.partition else [],
        partition_gap=partition_gap(P, x),
    )


def _kappa(records: Sequence[SampleRecord]) -> tuple[float | None, SampleRecord | None]:
    used = [r for r in records if r.ratio is not None]
    if not used:
        return None, None
    worst = max(used, key=lambda r: r.ratio)
    return worst.ratio, worst


def _sweep(
    P: Program, center: Sequence[object], radius: float, samples: int, seed: int, config: RunConfig
) -> list[SampleRecord]:
    rng = np.random.default_rng(seed)
    c = [float(v) for v in center]
    points = ball_samples(c, radius, samples, rng)
    return [
        evaluate_sample(P, tuple(float(v) for v in x), config, center, seed + k)
        for k, x in enumerate(points)
    ]


def estimate_error_bound(
    P: Program,
    x: Sequence[object],
    eps: object = "1/10",
    samples: int = 1000,
    seed: int | None = None,
    config: RunConfig | None = None,
) -> ErrorBoundEstimate:
    """Empirical error-bound modulus around a feasible point.

    kappa_hat is the largest ratio d_F(x)/residual(x) over the samples. The
    distances are upper bounds, so kappa_hat only estimates the modulus.
    """
    config = config or RunConfig.from_settings()
    seed = config.seed if seed is None else seed
    center = require_feasible(P, point(x))
    radius = float(to_fraction(eps))
    records = _sweep(P, center, radius, samples, seed, config)
    kappa, worst = _kappa(records)
    profile = [ProfileEntry(radius=radius, kappa_hat=kappa, used=_used(records))]
    for divisor in PROFILE_DIVISORS:
        shrunk = _sweep(P, center, radius / divisor, samples, seed + divisor, config)
        k, _ = _kappa(shrunk)
        profile.append(ProfileEntry(radius=radius / divisor, kappa_hat=k, used=_used(shrunk)))
    monotone = None
    half = profile[1].kappa_hat
    if kappa is not None and half is not None:
        monotone = half <= kappa * (1 + MONOTONE_SLACK)
        if not monotone:
            logger.warning(f"kappa_hat grows from {kappa:.3g} to {half:.3g} at half the radius")
    logger.info(f"kappa_hat {kappa} over {len(records)} samples at radius {radius:g}")
    return ErrorBoundEstimate(
        point=[to_fraction(v) for v in center],
        radius=radius,
        samples=samples,
        seed=seed,
        norm=config.norm,
        kappa_hat=kappa,
        worst_sample=worst,
        profile=profile,
        monotone=monotone,
        records=records,
    )


def _used(records: Sequence[SampleRecord]) -> int:
    return sum(1 for r in records if r.ratio is not None)


def to_frame(estimate: ErrorBoundEstimate) -> pd.DataFrame:
    """One row per sample of the main radius."""
    rows = []
    for r in estimate.records:
        row = {f"x{k + 1}": v for k, v in enumerate(r.point)}
        row |= {"g_plus": r.g_plus, "h_norm": r.h_norm}
        row |= {f"gamma_dist{i + 1}": d for i, d in enumerate(r.gamma_dists)}
        row |= {
            "residual": r.residual,
            "distance": r.distance,
            "ratio": math.nan if r.ratio is None else r.ratio,
            "partition": " ".join(str(p + 1) for p in r.partition),
            "partition_gap": r.partition_gap,
        }
        rows.append(row)
    return pd.DataFrame(rows)


def write_csv(estimate: ErrorBoundEstimate, path: Path | str) -> Path:
    path = Path(path)
    to_frame(estimate).to_csv(path, index=False)
    logger.info(f"wrote {len(estimate.records)} samples to {path}")
    return path
