import math

import numpy as np
import pandas as pd
import pytest

from core.errors import InfeasiblePointError
from errorbound import (
    estimate_error_bound,
    feasible_distance,
    nearest_feasible,
    to_frame,
    write_csv,
)
from errorbound.estimate import ball_samples
from model import is_feasible, residual


@pytest.fixture
def first_coordinate(program_from):
    return program_from(
        """
        vars = ["x1", "x2"]
        h = ["x1"]
        """
    )


@pytest.fixture
def parabola(program_from):
    return program_from(
        """
        vars = ["x1", "x2"]
        h = ["x2 - x1^2"]
        """
    )


def test_feasible_point_is_at_distance_zero(mpec_toy):
    assert feasible_distance(mpec_toy, (0, 5)) == 0


def test_distance_to_the_complementarity_set(mpec_toy):
    near = nearest_feasible(mpec_toy, (1, 1))
    assert near.distance == 1
    assert near.point in {(1, 0), (0, 1)}


def test_distance_to_an_affine_equality(first_coordinate):
    assert feasible_distance(first_coordinate, (3, 0)) == 3


def test_curved_equality_uses_local_search(parabola):
    near = nearest_feasible(parabola, (0.0, 1.0))
    assert near.distance == pytest.approx(math.sqrt(3) / 2, abs=1e-4)
    assert is_feasible(parabola, near.point, 1e-6)
    gap = math.dist(near.point, (0.0, 1.0))
    assert gap == pytest.approx(near.distance, abs=1e-12)


def test_ball_samples_stay_in_the_ball():
    points = ball_samples([1.0, -1.0, 0.0], 0.5, 200, np.random.default_rng(0))
    assert points.shape == (206, 3)
    assert np.all(np.linalg.norm(points - [1.0, -1.0, 0.0], axis=1) <= 0.5 + 1e-12)


def test_identity_complementarity_has_modulus_one(mpec_toy):
    est = estimate_error_bound(mpec_toy, (0, 0), eps="1/10", samples=1000, seed=7)
    assert est.kappa_hat == pytest.approx(1, abs=1e-6)
    assert est.monotone is True
    assert [p.radius for p in est.profile] == pytest.approx([0.1, 0.05, 0.025, 0.0125])
    assert all(r.partition_gap < 1e-9 for r in est.records)


def test_affine_equality_has_modulus_one(first_coordinate):
    est = estimate_error_bound(first_coordinate, (0, 0), samples=100, seed=1)
    assert est.kappa_hat == pytest.approx(1, abs=1e-12)


def test_worst_sample_replays(mpec_toy):
    est = estimate_error_bound(mpec_toy, (0, 0), samples=100, seed=3)
    worst = est.worst_sample
    ratio = feasible_distance(mpec_toy, worst.point) / residual(mpec_toy, worst.point).total
    assert ratio == pytest.approx(worst.ratio, abs=1e-6)


def test_infeasible_center_is_rejected(mpec_toy):
    with pytest.raises(InfeasiblePointError):
        estimate_error_bound(mpec_toy, (1, 1), samples=10)


def test_samples_export_to_csv(mpec_toy, tmp_path):
    est = estimate_error_bound(mpec_toy, (0, 0), samples=50, seed=2)
    frame = to_frame(est)
    assert len(frame) == 54
    assert {"x1", "x2", "residual", "distance", "ratio", "gamma_dist1"} <= set(frame.columns)

    path = write_csv(est, tmp_path / "samples.csv")
    back = pd.read_csv(path)
    assert list(back.columns) == list(frame.columns)
    assert back["distance"].to_numpy() == pytest.approx(frame["distance"].to_numpy())


def test_records_stay_out_of_the_json(mpec_toy):
    est = estimate_error_bound(mpec_toy, (0, 0), samples=10)
    assert "records" not in est.model_dump(mode="json")


@pytest.mark.slow
def test_example_profile_is_finite(example41):
    est = estimate_error_bound(example41, (0, 0, 0), eps="1/20", samples=30, seed=0)
    assert est.kappa_hat is not None and math.isfinite(est.kappa_hat)
    assert all(p.kappa_hat is not None and math.isfinite(p.kappa_hat) for p in est.profile)
