import json
import os

import pytest

from deltasets import FiniteSet, load_set

from conftest import FIXTURES


def test_gen_writes_set(cli, tmp_path):
    r = cli(["gen", "--spec", "even-pow2-sums", "--count", "5", "--out", "a.json"], cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    assert json.loads((tmp_path / "a.json").read_text()) == {"elements": [1, 4, 5, 16, 17]}


def test_gen_round_trip(cli, tmp_path):
    r = cli(["gen", "--spec", "floor(0.38 * n^1.5)", "--count", "40", "--repair", "--out", "s.json"], cwd=tmp_path)
    assert r.returncode == 0
    assert "repaired a_1: 0 -> 1" in r.stderr
    from deltasets import generate
    assert load_set(tmp_path / "s.json") == generate("floor(0.38 * n^1.5)", 40, repair=True).set


def test_witness(cli, tmp_path):
    (tmp_path / "a.json").write_text('{"elements": [1, 2, 3, 5]}')
    (tmp_path / "b.json").write_text('{"elements": [1, 2, 3, 4]}')
    r = cli(["witness", "--a", "a.json", "--b", "b.json", "--h", "1"], cwd=tmp_path)
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["x"] == 1 and doc["multiplicity"] == 2
    assert doc["bound"] == {"num": 7, "den": 9}


def test_experiment_pass(cli):
    r = cli(["experiment", "--name", "erdos-freud", "--N", "1024"])
    assert r.returncode == 0
    assert r.stdout == (FIXTURES / "golden" / "erdos-freud.json").read_text()


def test_failed_verdict_exit_one(cli):
    r = cli(["check", "--theorem", "T3.6", "--param", "K=1", "--param", "alpha=0.5",
             "--param", "M=0.2", "--param", "beta=2"])
    assert r.returncode == 1
    assert json.loads(r.stdout)["satisfied"] is False


def test_hypothesis_not_satisfied_exit_one(cli, tmp_path):
    (tmp_path / "a.json").write_text('{"elements": [3, 6, 9, 12]}')
    (tmp_path / "b.json").write_text('{"elements": [2, 4, 6, 8]}')
    r = cli(["pigeonhole", "--a", "a.json", "--b", "b.json"], cwd=tmp_path)
    assert r.returncode == 1
    assert json.loads(r.stdout)["error"] == "hypothesis-not-satisfied"


@pytest.mark.parametrize("argv, flag", [
    (["gen", "--spec", "floor(n ^", "--count", "3"], "--spec"),
    (["scan", "--a", "x.json", "--b", "x.json", "--grid", "geom:abc"], "--grid"),
    (["experiment", "--name", "erdos-freud", "--param", "N"], "--param"),
])
def test_usage_errors_show_grammar(cli, tmp_path, argv, flag):
    (tmp_path / "x.json").write_text('{"elements": [1, 2, 5]}')
    r = cli(argv, cwd=tmp_path)
    assert r.returncode == 2
    assert f"  {flag}:" in r.stderr


def test_unknown_flag_and_command(cli):
    assert cli(["hist", "--bogus"]).returncode == 2
    assert cli(["frobnicate"]).returncode == 2
    assert cli([]).returncode == 2


def test_domain_error_exit_two(cli):
    r = cli(["experiment", "--name", "erdos-freud", "--N", "99999"])
    assert r.returncode == 2


def test_hist_csv(cli, tmp_path):
    (tmp_path / "a.json").write_text('{"elements": [1, 2, 3, 5]}')
    r = cli(["hist", "--a", "a.json", "--format", "csv"], cwd=tmp_path)
    assert r.stdout == "x,count\n1,2\n2,2\n3,1\n4,1\n"


def test_check_series_csv(cli, tmp_path):
    r = cli(["gen", "--spec", "primes", "--count", "300", "--out", "p.json"], cwd=tmp_path)
    r = cli(["check", "--a", "p.json", "--kind", "a-over-ntheta", "--theta", "log(n)",
             "--grid", "100,300", "--format", "csv"], cwd=tmp_path)
    assert r.returncode == 0
    assert r.stdout.splitlines()[0] == "n,value,running_inf,running_sup"
    assert len(r.stdout.splitlines()) == 3
