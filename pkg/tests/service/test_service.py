from pathlib import Path
from unittest.mock import patch

import pytest

from schema import CheckResult, ErrorBoundEstimate, MStatReport, NormalConeReport, ServiceMetadata

PROGRAMS = Path(__file__).resolve().parents[2] / "src" / "cli" / "programs"


@pytest.fixture
def example_text():
    return (PROGRAMS / "example41.prog").read_text()


def test_info(test_client) -> None:
    response = test_client.get("/info")
    assert response.status_code == 200
    info = ServiceMetadata.model_validate(response.json())
    assert "rcpld" in info.cqs and "mpsc-rcpld" in info.cqs
    assert info.default_scheme.levels >= 1


def test_check_on_the_example(test_client, example_text) -> None:
    response = test_client.post(
        "/check",
        json={"program": example_text, "point": ["0", "0", "0"], "cqs": ["rcpld", "prcpld"]},
    )
    assert response.status_code == 200
    result = CheckResult.model_validate(response.json())
    assert [r.verdict for r in result.reports] == ["FAILS_WITNESSED", "HOLDS_SAMPLED"]
    assert result.exit_code == 1


def test_check_passes_scheme_overrides(test_client, toy_text) -> None:
    response = test_client.post(
        "/check", json={"program": toy_text, "point": ["0", "0"], "levels": 10, "seed": 3}
    )
    assert response.status_code == 200
    scheme = response.json()["reports"][0]["scheme"]
    assert scheme["levels"] == 10
    assert scheme["seed"] == 3


def test_invalid_scheme_is_rejected(test_client, toy_text) -> None:
    response = test_client.post(
        "/check", json={"program": toy_text, "point": ["0", "0"], "levels": 0}
    )
    assert response.status_code == 422


@pytest.mark.parametrize(
    ("program", "point"),
    [
        ('vars = ["x"]\nh = ["x +* 1"]\n', ["0"]),
        ('vars = ["x"]\nh = ["x"]\n', ["1"]),
        ('vars = ["x"]\nh = ["x"]\n', ["0", "0"]),
    ],
)
def test_verification_errors_map_to_422(test_client, program, point) -> None:
    response = test_client.post("/check", json={"program": program, "point": point})
    assert response.status_code == 422
    assert response.json()["detail"]


def test_unknown_checker_maps_to_422(test_client, toy_text) -> None:
    response = test_client.post(
        "/check", json={"program": toy_text, "point": ["0", "0"], "cqs": ["mfcq"]}
    )
    assert response.status_code == 422


def test_unexpected_errors_map_to_500(test_client, toy_text) -> None:
    with patch("service.service.run_checks", side_effect=RuntimeError("boom")):
        response = test_client.post("/check", json={"program": toy_text, "point": ["0", "0"]})
    assert response.status_code == 500
    assert response.json()["detail"] == "Unexpected error"


def test_regular_normal_cone(test_client, example_text) -> None:
    response = test_client.post(
        "/normal-cone",
        json={"program": example_text, "point": ["0", "0", "0"], "kind": "regular"},
    )
    assert response.status_code == 200
    report = NormalConeReport.model_validate(response.json())
    assert {tuple(r) for r in report.rays} == {(-1, 2, -2), (0, 1, -1)}


def test_limiting_normal_cone_of_the_toy(test_client, toy_text) -> None:
    response = test_client.post("/normal-cone", json={"program": toy_text, "point": ["0", "0"]})
    report = NormalConeReport.model_validate(response.json())
    assert len(report.strata) == 3


def test_mstat(test_client, toy_text) -> None:
    response = test_client.post(
        "/mstat", json={"program": toy_text, "point": ["0", "0"], "all": True}
    )
    report = MStatReport.model_validate(response.json())
    assert report.stationary
    assert report.certificates[0].eta == [[-1, -1]]


def test_mstat_without_objective(test_client, example_text) -> None:
    response = test_client.post("/mstat", json={"program": example_text, "point": ["0", "0", "0"]})
    assert response.status_code == 422


def test_errorbound(test_client, toy_text) -> None:
    response = test_client.post(
        "/errorbound",
        json={"program": toy_text, "point": ["0", "0"], "samples": 100, "seed": 7},
    )
    assert response.status_code == 200
    est = ErrorBoundEstimate.model_validate(response.json())
    assert est.kappa_hat == pytest.approx(1, abs=1e-6)
    assert "records" not in response.json()
