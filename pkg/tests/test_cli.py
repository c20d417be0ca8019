import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from wmub.cli import cli, parse_labels, plot_svg
from wmub.modring import crt_context

GOLDEN = Path(__file__).parent / "data" / "table_d21.csv"


@pytest.fixture
def runner():
    return CliRunner()


def test_table_matches_golden_file(runner, tmp_path):
    out = tmp_path / "t.csv"
    res = runner.invoke(cli, ["table", "--p1", "3", "--p2", "7", "--out", str(out)])
    assert res.exit_code == 0
    assert out.read_bytes() == GOLDEN.read_bytes()


def test_table_rows_and_determinism(runner):
    a = runner.invoke(cli, ["table", "--p1", "3", "--p2", "5"])
    b = runner.invoke(cli, ["table", "--p1", "3", "--p2", "5"])
    assert a.exit_code == 0 and a.output == b.output
    lines = a.output.splitlines()
    assert len(lines) == 25
    assert lines[0] == "unfactored_basis,factored_basis,unfactored_line,factored_line,unfactored_zeroset,factored_zeroset"
    assert "\r" not in a.output


def test_table_example_rows():
    text = GOLDEN.read_text(encoding="utf-8")
    assert '"B(1,8)","𝓑(2,3)","L(1,8)","𝓛(2,3)","A(1,8)","𝓐(2,3)"' in text
    assert '"B(7,15)","𝓑(0,-1)","L(7,15)","𝓛(0,-1)","A(7,15)","𝓐(0,-1)"' in text


@pytest.mark.parametrize("args", [["--p1", "3", "--p2", "3"], ["--p1", "4", "--p2", "7"], ["--p1", "13", "--p2", "23"]])
def test_invalid_dimensions_exit_2(runner, args):
    res = runner.invoke(cli, ["table", *args])
    assert res.exit_code == 2
    res = runner.invoke(cli, ["verify", *args])
    assert res.exit_code == 2


def test_verify_d21(runner, tmp_path):
    out = tmp_path / "r.json"
    res = runner.invoke(cli, ["verify", "--p1", "3", "--p2", "7", "--out", str(out)])
    assert res.exit_code == 0, res.output
    report = json.loads(out.read_text())
    for key in ("schema_version", "dimension", "psi", "records", "checks", "mismatches"):
        assert key in report
    assert report["dimension"] == 21 and report["psi"] == 32
    assert report["pass_count"] == report["check_count"]
    assert report["mismatches"] == []
    assert len(report["records"]) == 32
    # the literal sum d^2/2 (1+i) is reported, not enforced
    assert report["checks"]["zero_sum_congruence"]["literal_mismatches"] > 0


def test_verify_fails_with_impossible_tolerance(runner):
    res = runner.invoke(cli, ["verify", "--p1", "3", "--p2", "5", "--tol", "1e-30"])
    assert res.exit_code == 1


def test_enumerate(runner):
    res = runner.invoke(cli, ["enumerate", "--p1", "3", "--p2", "7", "--format", "json"])
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["psi"] == 32
    assert {"nu1": 2, "nu2": 3, "mu_hat": 1, "nu_hat": 8, "rho": 1, "sigma": 8} in doc["labels"]


def test_zeros_command(runner):
    res = runner.invoke(cli, ["zeros", "--p1", "3", "--p2", "7", "--labels", "2,3", "--m", "4"])
    assert res.exit_code == 0
    rows = res.output.splitlines()
    assert rows[0] == "nu1,nu2,m,index,re,im"
    assert "2,3,4,3,3.5,4.5" in rows


def test_plot_lines(runner):
    res = runner.invoke(cli, ["plot", "--p1", "3", "--p2", "7", "--labels", "2,3;2,5"])
    assert res.exit_code == 0
    svg = res.output
    assert svg.startswith("<svg") and 'width="600"' in svg
    assert svg.count('class="set0"') == 21
    assert svg.count('class="set1"') == 21
    assert svg.count('class="shared"') == 3
    scale = 580 / 21
    for x, y in [(0, 0), (7, 14), (14, 7)]:
        assert f'cx="{10 + x * scale:.2f}" cy="{590 - y * scale:.2f}"' in svg


def test_plot_zeros(runner):
    res = runner.invoke(cli, ["plot", "--p1", "3", "--p2", "7", "--labels", "2,3;2,5", "--m", "4"])
    assert res.exit_code == 0
    svg = res.output
    assert svg.count('class="shared"') == 3
    scale = 580 / 21
    for x, y in [(3.5, 4.5), (10.5, 18.5), (17.5, 11.5)]:
        assert f'cx="{10 + x * scale:.2f}" cy="{590 - y * scale:.2f}"' in svg


def test_plot_single_label_has_no_highlight(runner):
    res = runner.invoke(cli, ["plot", "--p1", "3", "--p2", "7", "--labels", "2,3"])
    assert res.exit_code == 0
    assert 'class="shared"' not in res.output


@pytest.mark.parametrize("labels", ["5,1", "0,9", "x", "1,2,3", ""])
def test_plot_unknown_labels_exit_2(runner, labels):
    res = runner.invoke(cli, ["plot", "--p1", "3", "--p2", "7", "--labels", labels])
    assert res.exit_code == 2


def test_unfactored_labels():
    ctx = crt_context(3, 7)
    assert [l.pair for l in parse_labels("1,8;2,16;7,15", ctx, unfactored=True)] == [(2, 3), (2, 3), (0, -1)]
    assert [l.pair for l in parse_labels("−1,0", ctx)] == [(-1, 0)]


def test_svg_is_deterministic():
    pts = [[(0, 0), (1, 2)], [(1, 2), (3, 3)]]
    assert plot_svg(pts, 5) == plot_svg(pts, 5)
