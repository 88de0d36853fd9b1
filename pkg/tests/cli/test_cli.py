import json
from fractions import Fraction
from pathlib import Path

import pandas as pd
import pytest

from cli import main
from cli.commands import exit_code, parse_point
from cli.reproduce import EXAMPLES, differences, expected
from schema import Verdict

PROGRAMS = Path(__file__).resolve().parents[2] / "src" / "cli" / "programs"
EXAMPLE = str(PROGRAMS / "example41.prog")
TOY = str(PROGRAMS / "mpec_toy.prog")
TOY_ORTHO = str(PROGRAMS / "mpec_toy_ortho.prog")


def test_parse_point():
    assert parse_point("0, 1/2,-3") == (0, Fraction(1, 2), -3)
    with pytest.raises(ValueError):
        parse_point("1,,2")
    with pytest.raises(ValueError):
        parse_point("")


def test_exit_code_prefers_failures():
    assert exit_code([Verdict.HOLDS_SAMPLED]) == 0
    assert exit_code([Verdict.INCONCLUSIVE, Verdict.HOLDS_SAMPLED]) == 2
    assert exit_code([Verdict.INCONCLUSIVE, Verdict.FAILS_WITNESSED]) == 1


def test_rcpld_fails_on_the_example(capsys):
    assert main(["check", EXAMPLE, "--at", "0,0,0", "--cq", "rcpld"]) == 1
    out = capsys.readouterr().out
    assert "rcpld: FAILS_WITNESSED" in out
    assert "eta[1]" in out


def test_prcpld_holds_on_the_example(capsys):
    assert main(["check", EXAMPLE, "--at", "0,0,0", "--cq", "prcpld"]) == 0
    assert "prcpld: HOLDS_SAMPLED" in capsys.readouterr().out


def test_several_checkers_in_one_run(capsys):
    argv = ["--format", "json", "check", TOY, "--at", "0,0"]
    assert main([*argv, "--cq", "licq,crcq", "--cq", "rcpld"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert [r["cq"] for r in result["reports"]] == ["licq", "crcq", "rcpld"]
    assert result["exit_code"] == 0


def test_syntax_error_exits_with_3(tmp_path, capsys):
    bad = tmp_path / "bad.prog"
    bad.write_text('vars = ["x"]\nh = ["x +* 1"]\n')
    assert main(["check", str(bad), "--at", "0"]) == 3
    assert "error:" in capsys.readouterr().err


def test_missing_file_and_bad_point_exit_with_3(capsys):
    assert main(["check", "no-such.prog", "--at", "0"]) == 3
    assert main(["check", TOY, "--at", "0,0,0"]) == 3
    assert main(["check", TOY, "--at", "a,b"]) == 3


def test_infeasible_point_exits_with_3(capsys):
    assert main(["check", TOY, "--at", "1,1"]) == 3
    assert "error:" in capsys.readouterr().err


def test_usage_errors_exit_with_3():
    with pytest.raises(SystemExit) as e:
        main(["check", TOY])
    assert e.value.code == 3
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 3


def test_unknown_checker_exits_with_3(capsys):
    assert main(["check", TOY, "--at", "0,0", "--cq", "mfcq"]) == 3


def test_regular_cone_of_the_example(capsys):
    assert main(["normal-cone", EXAMPLE, "--at", "0,0,0", "--regular"]) == 0
    out = capsys.readouterr().out
    assert "regular normal cone of block 1" in out
    assert "(-1, 2, -2)" in out and "(0, 1, -1)" in out


def test_limiting_cone_lists_strata(capsys):
    assert main(["--format", "json", "normal-cone", TOY, "--at", "1,0"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["kind"] == "limiting"
    assert report["lines"] == [["0", "1"]]
    assert report["rays"] == []
    assert len(report["strata"]) == 1


def test_block_out_of_range(capsys):
    assert main(["normal-cone", TOY, "--at", "0,0", "--block", "2"]) == 3


def test_mstat_on_the_toy(capsys):
    assert main(["--format", "json", "mstat", TOY, "--at", "0,0"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["stationary"] is True
    assert report["certificates"][0]["eta"] == [["-1", "-1"]]


def test_mstat_without_objective_exits_with_3(capsys):
    assert main(["mstat", EXAMPLE, "--at", "0,0,0"]) == 3


def test_errorbound_with_csv(tmp_path, capsys):
    csv = tmp_path / "samples.csv"
    argv = ["--format", "json", "errorbound", TOY, "--at", "0,0", "--eps", "0.1", "-n", "200"]
    assert main([*argv, "--seed", "7", "--csv", str(csv)]) == 0
    est = json.loads(capsys.readouterr().out)
    assert est["kappa_hat"] == pytest.approx(1, abs=1e-6)
    assert len(pd.read_csv(csv)) == 204


def test_structured_output_is_deterministic(capsys):
    argv = ["--format", "json", "check", EXAMPLE, "--at", "0,0,0", "--cq", "rcpld"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_ortho_checkers_from_the_command_line(capsys):
    assert main(["check", TOY_ORTHO, "--at", "0,0", "--cq", "mpec-rcpld"]) == 0
    assert "mpec-rcpld: HOLDS_SAMPLED" in capsys.readouterr().out
    assert main(["--format", "json", "check", TOY_ORTHO, "--at", "0,0", "--all"]) == 0
    names = [r["cq"] for r in json.loads(capsys.readouterr().out)["reports"]]
    assert {"rcpld", "prcpld", "mpec-rcpld", "mpec-prcpld"} <= set(names)
    assert "mpvc-rcpld" not in names


def test_ortho_checker_needs_an_ortho_program(capsys):
    assert main(["check", TOY, "--at", "0,0", "--cq", "mpec-rcpld"]) == 3


@pytest.mark.parametrize("example", sorted(EXAMPLES))
def test_reproduce_matches_the_committed_summary(example, capsys):
    assert main(["reproduce", example]) == 0
    out = capsys.readouterr().out
    assert "matches the committed summary" in out


def test_differences_name_the_changed_keys():
    wanted = expected("omega-e-cones")
    changed = {**wanted, "points": {}}
    assert differences(changed, wanted) == ["points"]
    assert differences(wanted, wanted) == []
