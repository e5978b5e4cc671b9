import json

import pytest
from click.testing import CliRunner

from hyperspaces import report as rpt
from hyperspaces.cli import main
from hyperspaces.fixtures import write_fixtures


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp("fixtures")
    write_fixtures(d)
    return d


def run(*args):
    result = CliRunner().invoke(main, [*map(str, args), "--json"])
    report = json.loads(result.output)
    rpt.validate(report)
    assert report["exit_code"] == result.exit_code
    return result.exit_code, report


def test_verify_passes(files):
    code, report = run("verify", files / "krasner.hyp", "--all")
    assert code == 0 and report["passed"]
    assert {c["id"] for c in report["checks"]} >= {"hypergroup", "hyperfield"}


def test_verify_reports_the_cone_witness(files):
    code, report = run("verify", files / "cone.hyp", "--check", "inner.axioms")
    assert code == 1 and not report["passed"]
    (check,) = report["checks"]
    homog = [v for v in check["violations"] if v["axiom"] == "IP.homogeneous"]
    assert homog[0]["witness"] == ["1", "(1, 0)", "(-1, 0)"]
    assert (homog[0]["left"], homog[0]["right"]) == ("0", "-1")


def test_verify_echo_fails_scalar_associativity(files):
    code, report = run("verify", files / "echo.hyp", "--check", "space.axioms")
    assert code == 1
    assert any(v["axiom"] == "HVS.star_assoc" for v in report["checks"][0]["violations"])


def test_bad_file_is_an_input_error(tmp_path):
    bad = tmp_path / "bad.hyp"
    bad.write_text("[group]\ncarrier = 0, 1\nhyperadd:\n  0 + 0 = {}\n")
    code, report = run("verify", bad, "--all")
    assert code == 2
    assert "line 4" in report["error"] and "non-empty" in report["error"]


def test_missing_file_and_unknown_check(files, tmp_path):
    assert run("verify", tmp_path / "absent.hyp", "--all")[0] == 2
    code, report = run("verify", files / "krasner.hyp", "--check", "no.such")
    assert code == 2 and "unknown check" in report["error"]


def test_gram_schmidt(files):
    code, report = run("gram-schmidt", files / "trivial_q2.hyp")
    assert code == 0
    details = report["checks"][0]["details"]
    assert details["output"] == ["(1, 1)", "(1/2, -1/2)"]
    code, report = run("gram-schmidt", files / "trivial_q2.hyp", "(1, 0)", "(2, 0)")
    assert code == 2 and "input not linearly independent" in report["error"]


def test_search_census(tmp_path):
    code, report = run("search", "--order", 2, "--zero", 0, "--out", tmp_path / "cat")
    assert code == 0
    assert report["search"]["keys"] == ["hypergroup/2:1.2.2.1", "hypergroup/2:1.2.2.3"]
    assert (tmp_path / "cat" / "index.tsv").exists()


def test_search_budget_and_cap():
    code, report = run("search", "--order", 3, "--budget", 100)
    assert code == 3 and report["search"]["partial"]
    code, report = run("search", "--order", 9)
    assert code == 3 and "cap" in report["error"]


def test_fixtures_command(tmp_path):
    code, report = run("fixtures", tmp_path, "--name", "z2")
    assert code == 0 and report["files"] == [str(tmp_path / "z2.hyp")]


def test_report_file_and_text_output(files, tmp_path):
    out = tmp_path / "r.json"
    result = CliRunner().invoke(main, ["verify", str(files / "z2.hyp"), "--all",
                                       "--report", str(out)])
    assert result.exit_code == 0
    assert "PASS" in result.output
    rpt.validate(json.loads(out.read_text()))


def test_list_checks():
    result = CliRunner().invoke(main, ["verify", "x", "--list"])
    assert "gram-schmidt" in result.output.split()
