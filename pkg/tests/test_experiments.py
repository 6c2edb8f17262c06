import pytest

from deltasets import jsonio
from deltasets.errors import ParamOutOfRange, UnknownExperiment
from deltasets.experiments import EXPERIMENTS, experiment_defaults, run_experiment

from conftest import FIXTURES


@pytest.mark.parametrize("name", sorted(EXPERIMENTS))
def test_matches_golden(name):
    report = run_experiment(name)
    assert report.passed
    golden = (FIXTURES / "golden" / f"{name}.json").read_text()
    assert jsonio.dumps(report.to_dict()) == golden


def test_timing_is_opt_in():
    r = run_experiment("erdos-freud", {"N": "64"})
    assert "wall_time" not in r.to_dict()
    assert r.to_dict(timing=True)["wall_time"] >= 0


def test_small_erdos_freud():
    r = run_experiment("erdos-freud", {"N": 15})
    assert r.passed
    assert [row["k"] for row in r.findings["ratios"]] == [1, 2, 3, 4]


def test_bad_parameters():
    with pytest.raises(UnknownExperiment):
        run_experiment("nope")
    with pytest.raises(ParamOutOfRange):
        run_experiment("erdos-freud", {"N": 10**6})
    with pytest.raises(ParamOutOfRange):
        run_experiment("erdos-freud", {"M": 3})
    with pytest.raises(ParamOutOfRange):
        run_experiment("sum-reciprocal", {"alpha": 0.9})


def test_defaults_exposed():
    assert experiment_defaults("prime-khintchine") == {"n": 2000, "eps": 0.5, "b_spec": "pow2"}


def test_power_constants_failing_constant_still_reports():
    r = run_experiment("power-constants", {"M": "0.2"})
    assert r.findings["verdict"]["satisfied"] is False
    assert r.passed


def test_prime_khintchine_other_b():
    r = run_experiment("prime-khintchine", {"n": "500", "b_spec": "floor-exp10-alpha(0.5)"})
    assert r.findings["count"] >= 1
