"""End-to-end smoke tests for the extremelab python module."""

import json
import math
import os
import subprocess
import sys

import pytest

import extremelab as xl


def test_cluster_space_basics():
    a = xl.Cluster([1.0, 0.7])
    assert a == xl.Cluster([0.0, 1.0, 0.7, 0.0])
    assert xl.shift_metric(a, a.shifted(4)) == 0.0
    assert xl.shift_metric(xl.Cluster([1.0]), xl.Cluster([0.5])) == pytest.approx(0.5)
    mag, shape = xl.polar(xl.Cluster([2.0, 1.0]))
    assert mag == pytest.approx(2.0)
    assert shape == xl.Cluster([1.0, 0.5])
    assert xl.truncate(xl.Cluster([1.0, 0.3, -0.2]), 0.25) == xl.Cluster([1.0, 0.3])


def test_linear_model_closed_forms():
    lm = xl.LinearModel([1.0, 0.7], alpha=0.7, p=1.0)
    assert xl.theta_linear(lm) == pytest.approx(1.0 / (1.0 + 0.7**0.7))
    assert xl.quantile_an(lm, 1000) == pytest.approx(
        (1000.0 * (1.0 + 0.7**0.7)) ** (1.0 / 0.7)
    )
    assert xl.q_sequence_linear(lm, seed=1) == xl.Cluster([1.0, 0.7])


def test_simulation_is_reproducible():
    law = xl.RegVarLaw(1.0, 1.0)
    s1 = xl.sample_regvar(law, 1000, seed=9)
    s2 = xl.sample_regvar(law, 1000, seed=9)
    assert s1.values == s2.values
    assert min(s1.values) >= 1.0  # p = 1 and |X| >= 1
    hill = xl.hill_estimate(xl.sample_regvar(law, 50000, seed=3), 500)
    assert 0.8 < hill < 1.2


def test_blocking_and_theta_estimate():
    law = xl.RegVarLaw(1.0, 1.0)
    n = 20000
    s = xl.sample_regvar(law, n, seed=21)
    plan = xl.BlockingPlan(n, 100, xl.quantile_an(law, n), u=0.25)
    pp = xl.block_series(s, plan)
    assert len(pp.points) == plan.k_n()
    est = xl.empirical_theta(s, plan)
    assert 0.3 < est.value < 2.0


def test_limit_point_process_and_intensity():
    pp = xl.sample_limit_pp(1.0, 1.0, xl.Cluster([1.0]), p_min=1.0, t_max=1.0, seed=5)
    for pt in pp.points:
        assert pt.p >= 1.0
        assert pt.q.sup_norm() == pytest.approx(1.0)
    value, se = xl.nu_limit("sup_threshold", 2.0, 0.0, 0.5, 1.0, xl.Cluster([1.0]))
    assert value == pytest.approx(0.25)
    assert se == 0.0


def test_decorated_paths_and_graph_metric():
    step = xl.StepPath(0.0, [0.5], [1.0])
    path = xl.embed_cadlag(step)
    decs = path.decorations
    assert len(decs) == 1 and decs[0].lo == 0.0 and decs[0].hi == 1.0
    assert xl.local_max(path, 0.0, 1.0) == pytest.approx(1.0)

    other = xl.embed_cadlag(xl.StepPath(1.0, [], []))
    d_exact = xl.hausdorff_graphs(xl.graph(path), xl.graph(other))
    d_grid = xl.hausdorff_graphs_grid(xl.graph(path), xl.graph(other), 1e-3)
    assert abs(d_exact - d_grid) <= 2e-3
    assert d_exact <= xl.uniform_metric(path, other) + 1e-12

    round_trip = json.loads(path.to_json())
    assert round_trip["initial"] == 0.0
    assert round_trip["jumps"] == [[0.5, 1.0]]


def test_partial_sums_and_stable_params():
    lm = xl.LinearModel([1.0, 0.7], alpha=0.7, p=1.0)
    s = xl.simulate_linear(lm, 1000, seed=17)
    path = xl.partial_sum_path(s.values, xl.quantile_an(lm, 1000))
    assert path.value(1.0) == pytest.approx(
        sum(s.values) / xl.quantile_an(lm, 1000)
    )
    frac, per = xl.m2_condition_check([xl.Cluster([1.0, 0.7]), xl.Cluster([1.0, -0.7])])
    assert per == [True, False]

    sp = xl.stable_params_from_Q(0.7, xl.theta_linear(lm), lm, 1.0, 2000, 1)
    assert sp.sigma_alpha == pytest.approx(1.7**0.7 / (1.0 + 0.7**0.7))
    fwd = xl.stable_params_from_forward_theta_linear(lm, 2000, 2)
    assert fwd.sigma_alpha == pytest.approx(sp.sigma_alpha, abs=0.05)


def test_record_laws():
    assert xl.cluster_records(xl.Cluster([1.0, 2.0, 3.0]), 0.0) == 3
    law = xl.ma1_kappa_law(2.0, 1.0)
    assert law[2] == pytest.approx(0.5)
    assert xl.exact_kappa_law(xl.Cluster([0.5, 1.0]), 1.0)[2] == pytest.approx(0.5)
    rm = xl.simulate_limit_records(1.0, xl.Cluster([1.0]), 1.0, math.e, seed=4)
    assert all(k == 1 for _, k in rm.atoms)


def test_experiment_harness_runs_and_is_deterministic():
    cfg = json.dumps(
        {
            "experiment": "metric-selftest",
            "seed": 11,
            "triples": 300,
            "hausdorff_pairs": 10,
        }
    )
    body1, pass1 = xl.run_experiment_json(cfg)
    body2, pass2 = xl.run_experiment_json(cfg)
    assert pass1 and pass2
    j1, j2 = json.loads(body1), json.loads(body2)
    j1.pop("generated_at"), j2.pop("generated_at")
    assert j1 == j2
    assert "verifies" in j1 and "resolved_config" in j1

    names = {e["name"] for e in xl.experiment_catalog()}
    assert {"records", "sums", "theta"} <= names
    assert len(names) >= 7


def _cli_path():
    # The build tree keeps the CLI two levels above the python package dir.
    here = os.environ.get("EXTREMELAB_CLI")
    if here:
        return here
    for cand in (
        os.path.join(os.path.dirname(xl.__file__), "..", "..", "extremelab"),
        os.path.join(os.getcwd(), "build", "extremelab"),
    ):
        if os.path.exists(cand):
            return os.path.abspath(cand)
    return None


@pytest.mark.skipif(_cli_path() is None, reason="CLI binary not found")
def test_cli_exit_codes(tmp_path):
    cli = _cli_path()
    out = subprocess.run([cli, "list"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "records" in out.stdout and "sums" in out.stdout

    bad = tmp_path / "bad.json"
    bad.write_text('{"experiment": "theta", "bogus": 1}')
    r = subprocess.run(
        [cli, "theta", "--config", str(bad), "--out", str(tmp_path / "o")],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 2
    assert not (tmp_path / "o" / "report.json").exists()

    ok = tmp_path / "ok.json"
    ok.write_text(
        json.dumps(
            {
                "experiment": "metric-selftest",
                "seed": 3,
                "triples": 200,
                "hausdorff_pairs": 5,
            }
        )
    )
    r2 = subprocess.run(
        [cli, "metric-selftest", "--config", str(ok), "--out", str(tmp_path / "ms")],
        capture_output=True,
        text=True,
    )
    assert r2.returncode == 0
    report = json.loads((tmp_path / "ms" / "report.json").read_text())
    assert report["results"]["pass"] is True
