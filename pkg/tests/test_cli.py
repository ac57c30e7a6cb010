from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from cayleyplane.cli import main
from cayleyplane.presentation import parse_presentation
from cayleyplane.report import Options, analyze, analyze_text


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(main, list(args))

    return invoke


def test_analyze_planar_presentation(run):
    result = run("analyze", "<a,b | b^2, abAb>", "--radius", "3")
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["vap"]["overall"] and report["flatness"]["flat"]
    assert report["graph"]["scope"] == "ball(3)"
    assert report["exit_code"] == 0


def test_analyze_finite_group(run):
    result = run("analyze", "<a,b | a^4, b^2, abab>")
    report = json.loads(result.stdout)
    assert result.exit_code == 0
    assert report["backend"]["order"] == 8 and report["graph"]["scope"] == "full"
    assert report["complex"]["cells"] == 6
    assert report["translate_faces"]["ok"]


def test_analyze_failure_exit_code(run):
    result = run("analyze", "<a,b,c | b^2, abab, Cab>", "--radius", "2")
    assert result.exit_code == 1
    report = json.loads(result.stdout)
    assert not report["vap"]["overall"]
    assert report["flatness"]["reason"] == "edge-over-incident"


def test_analyze_syntax_error(run):
    result = run("analyze", "<a,b | ab")
    assert result.exit_code == 3
    err = json.loads(result.stderr)
    assert err["error"] == "syntax" and err["position"] == 9


def test_analyze_unknown_generator(run):
    result = run("analyze", "<a | ax>")
    assert result.exit_code == 3
    assert json.loads(result.stderr)["error"] == "presentation"


def test_analyze_incomplete(run):
    result = run("analyze", "<a,b | a^4, b^4>", "--max-cosets", "20", "--kb-max-rules", "3")
    assert result.exit_code == 2
    err = json.loads(result.stderr)
    assert err["error"] == "incomplete" and len(err["attempts"]) >= 2


def test_analyze_reads_file(run, tmp_path):
    path = tmp_path / "z5.txt"
    path.write_text("<a | a^5>\n")
    result = run("analyze", str(path))
    assert result.exit_code == 0
    assert json.loads(result.stdout)["backend"]["order"] == 5


def test_text_format(run):
    result = run("analyze", "<a | a^5>", "--format", "text")
    assert result.exit_code == 0
    lines = dict(line.split("\t", 1) for line in result.stdout.splitlines())
    assert lines["vap.overall"] == "true"
    assert lines["backend.order"] == "5"


def test_emit_dot_and_report(run, tmp_path):
    result = run("analyze", "<a,b | b^2, abab>", "--radius", "2", "--emit", "dot",
                 "--out", str(tmp_path), "--name", "dinf")
    assert result.exit_code == 0
    assert (tmp_path / "dinf.dot").read_text().startswith("digraph")
    saved = json.loads((tmp_path / "dinf.json").read_text())
    assert saved == json.loads(result.stdout)


def test_emit_svg_is_deterministic(run, tmp_path):
    args = ["analyze", "<a,b | a^4, b^2, abab>", "--emit", "svg", "--out", str(tmp_path), "--name", "d4"]
    assert run(*args).exit_code == 0
    first = (tmp_path / "d4.svg").read_text()
    assert run(*args).exit_code == 0
    assert (tmp_path / "d4.svg").read_text() == first
    assert first.lstrip().startswith("<?xml") and "<svg" in first


def test_json_is_deterministic(run):
    a = run("analyze", "<a,b | a^4, b^4>", "--radius", "3").stdout
    b = run("analyze", "<a,b | a^4, b^4>", "--radius", "3").stdout
    assert a == b


def test_enumerate_search_option(run):
    result = run("analyze", "<a,b,c | b^2, abab, Cab>", "--radius", "2",
                 "--vap-search", "enumerate", "--embedding-budget", "20000")
    report = json.loads(result.stdout)
    # this ball is outerplanar, so a rim face exists
    assert report["ball_vap"]["consistent"]
    assert report["ball_vap"]["search_method"] in (None, "enumerate")


def test_library_entry_points_agree():
    report, code = analyze_text("<a | a^5>")
    again, code2, _ = analyze(parse_presentation("<a | a^5>"), Options())
    assert report == again and code == code2 == 0


def test_fixtures_command(run):
    result = run("fixtures")
    assert result.exit_code == 0, result.stdout
    rows = [line.split("\t") for line in result.stdout.splitlines()]
    assert rows[0][0] == "fixture"
    assert len(rows) > 5
    assert all(row[-1] == "ok" for row in rows[1:])
