"""Tests for the command-line front end."""

import json
import os

import pytest
from click.testing import CliRunner

import qtkostka.cli as cli
from qtkostka.coeffs import ConsistencyError


@pytest.fixture
def runner():
    return CliRunner()


def test_compute_e_pretty(runner):
    r = runner.invoke(cli.main, ["compute-e", "--mu", "0,1", "--rank", "2"])
    assert r.exit_code == 0
    assert r.output.strip() == "(1 - t^2*q)*M^{(0,1)}"
    r = runner.invoke(cli.main, ["compute-e", "--mu", "1", "--rank", "2"])
    # odd v exponents anywhere force the whole element into v form
    assert r.output.strip() == "(1 - v^2*q)*M^{(1)} + (v*q - v^3*q)*M^{(0,1)}"


def test_compute_e_unit(runner):
    r = runner.invoke(cli.main, ["compute-e", "--mu", ""])
    assert r.exit_code == 0
    assert r.output.strip() == "1"


def test_compute_e_monomial_basis(runner):
    r = runner.invoke(
        cli.main, ["compute-e", "--mu", "1", "--rank", "2", "--basis", "monomial"]
    )
    assert r.output.strip() == "(1 - t*q)*z_1 + (1 - t)*z_2"


def test_compute_e_json_deterministic(runner):
    args = ["compute-e", "--mu", "2,1", "--rank", "4", "--format", "json"]
    a = runner.invoke(cli.main, args)
    b = runner.invoke(cli.main, args)
    assert a.exit_code == 0
    assert a.output == b.output
    doc = json.loads(a.output)
    assert doc["rank"] == 4


def test_compute_kl_pretty(runner):
    r = runner.invoke(cli.main, ["compute-kl", "--lambda", "1", "--rank", "3"])
    assert r.exit_code == 0
    assert r.output.strip() == "M^{(1)} + v*M^{(0,1)} + v^2*M^{(0,0,1)}"


def test_kostka_pretty(runner):
    r = runner.invoke(cli.main, ["kostka", "--lambda", "3,1", "--mu", "2,2"])
    assert r.exit_code == 0
    assert r.output.strip() == "t + t*q + t^2*q"


def test_kostka_marked_table(runner):
    r = runner.invoke(cli.main, ["kostka", "--lambda", "3,1", "--mu", "2,2", "--marked"])
    assert r.exit_code == 0
    lines = r.output.strip().splitlines()
    assert lines[0] == "t + t*q + t^2*q"
    assert len(lines) == 1 + 16  # 2^4 markings of a 4-box shape
    table = {}
    for line in lines[1:]:
        marks, rest = line.split("  A=", 1)
        a, rest = rest.split("  L=", 1)
        l, value = rest.split("  ", 1)
        table[marks.strip()] = (int(a), int(l), value.strip())
    assert table["2,2|"] == (0, 0, "t")
    assert table["2,2|1.2"] == (1, 2, "t^2")
    assert table["2,2|2.2"] == (1, 1, "t")
    assert table["2,2|1.2,2.2,1.1,2.1"][2] == "0"


def test_kostka_json(runner):
    args = ["kostka", "--lambda", "2", "--mu", "1,1", "--format", "json", "--marked"]
    a = runner.invoke(cli.main, args)
    assert a.exit_code == 0
    doc = json.loads(a.output)
    assert doc["format"] == 1
    assert doc["lambda"] == "2" and doc["mu"] == "1,1"
    assert doc["value"] == [{"c": "1", "q": 0, "v": 2}]
    assert len(doc["marked"]) == 4
    assert a.output == runner.invoke(cli.main, args).output


def test_parse_error_is_exit_2(runner):
    r = runner.invoke(cli.main, ["kostka", "--lambda", "x", "--mu", "1"])
    assert r.exit_code == 2
    r = runner.invoke(cli.main, ["compute-e", "--mu", "1", "--rank", "1"])
    assert r.exit_code == 2
    r = runner.invoke(cli.main, ["scan", "--max-weight", "-1"])
    assert r.exit_code == 2


def test_internal_failure_is_exit_3(runner, monkeypatch):
    def boom(lam, mu):
        raise ConsistencyError("stability certificate failed")

    monkeypatch.setattr(cli, "kostka", boom)
    r = runner.invoke(cli.main, ["kostka", "--lambda", "2", "--mu", "1,1"])
    assert r.exit_code == 3


def test_cache_round_trip(runner, tmp_path, monkeypatch):
    cache = tmp_path / "cache"
    monkeypatch.setenv("KOSTKA_CACHE", str(cache))
    args = ["kostka", "--lambda", "3,1", "--mu", "2,2", "--marked"]
    first = runner.invoke(cli.main, args)
    assert first.exit_code == 0
    assert (cache / "kostka").is_dir()
    assert (cache / "marked").is_dir()

    # a poisoned library would now be ignored in favor of the cache
    monkeypatch.setattr(cli, "kostka", None)
    monkeypatch.setattr(cli, "marked_kostka", None)
    second = runner.invoke(cli.main, args)
    assert second.exit_code == 0
    assert second.output == first.output


def test_cache_round_trip_elements(runner, tmp_path, monkeypatch):
    cache = tmp_path / "cache"
    monkeypatch.setenv("KOSTKA_CACHE", str(cache))
    for args, kind in [
        (["compute-e", "--mu", "1", "--rank", "2"], "e_tilde"),
        (["compute-kl", "--lambda", "1", "--rank", "3"], "kl"),
    ]:
        first = runner.invoke(cli.main, args)
        assert first.exit_code == 0
        assert (cache / kind).is_dir()
        second = runner.invoke(cli.main, args)
        assert second.output == first.output


def test_scan_cli(runner, tmp_path):
    report = tmp_path / "report.json"
    r = runner.invoke(cli.main, ["scan", "--max-weight", "2", "--report", str(report)])
    assert r.exit_code == 0
    summary = r.output.strip().splitlines()[-1]
    assert summary.startswith("pairs=14 violations=0 min_v_exponent=0 total=")
    doc = json.loads(report.read_text())
    assert doc["pairs"] == 14 and doc["violations"] == []


def test_scan_rejects_bad_jobs(runner):
    # jobs are clamped rather than rejected
    r = runner.invoke(cli.main, ["scan", "--max-weight", "0", "--jobs", "0"])
    assert r.exit_code == 0


def test_selftest(runner):
    r = runner.invoke(cli.main, ["selftest"])
    assert r.exit_code == 0, r.output
    lines = r.output.strip().splitlines()
    assert lines[-1] == "all checks passed"
    assert sum(1 for line in lines if "  ok  " in line or line.rstrip().endswith(")")) >= 10
