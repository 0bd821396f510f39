import json
import os
import subprocess

import pytest

CLI = os.environ.get("CONTESTLAB_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="CONTESTLAB_CLI not set")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_eval_json():
    result = run("eval", "--csf", "power:a=2", "--values", "1,1",
                 "--profile", "0.5,0.5", "--format", "json")
    assert result.returncode == 0
    doc = json.loads(result.stdout)
    assert doc["probabilities"] == [0.5, 0.5]
    assert doc["payoffs"] == [0.0, 0.0]
    assert doc["aggregate"] == 1.0


def test_eval_max_indicator():
    result = run("eval", "--csf", "max-indicator", "--values", "2,1",
                 "--profile", "2,0.7", "--format", "json")
    doc = json.loads(result.stdout)
    assert doc["probabilities"] == [1.0, 0.0]
    assert doc["payoffs"] == [0.0, -0.7]


def test_eval_rejects_inadmissible_exponent():
    result = run("eval", "--csf", "power:a=5", "--values", "1,1", "--profile", "0,0")
    assert result.returncode == 2
    assert "a must be an integer" in result.stderr


def test_verify_exit_codes():
    third = "0.3333333333333333"
    passing = run("verify", "--csf", "power:a=3", "--values", "1,1,1",
                  "--profile", ",".join([third] * 3))
    assert passing.returncode == 0
    doc = json.loads(passing.stdout)
    assert doc["is_epsilon_ne"] is True
    assert doc["extraction_ratio"] == pytest.approx(1.0, abs=1e-9)

    failing = run("verify", "--csf", "power:a=2", "--values", "1,1",
                  "--profile", "0.4,0.4")
    assert failing.returncode == 1
    assert json.loads(failing.stdout)["is_epsilon_ne"] is False


def test_scan_emits_line_delimited_json():
    result = run("scan", "--csf", "power:a=2", "--values", "1,1", "--per-axis", "11")
    assert result.returncode == 0
    lines = [line for line in result.stdout.splitlines() if line]
    assert len(lines) >= 1
    for line in lines:
        cert = json.loads(line)
        assert cert["is_epsilon_ne"] is True
        assert cert["profile"] == [0.5, 0.5]


def test_report_sweep_csv():
    result = run("report", "--csf", "power:a=3", "--values", "1,1,1",
                 "--format", "csv", "--sweep-a", "3:12")
    assert result.returncode == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "a,aggregate_ratio"
    ratios = [float(line.split(",")[1]) for line in lines[1:]]
    assert len(ratios) == 10
    assert ratios == sorted(ratios)
    assert ratios[0] == 0.75


def test_report_json_counterwitness():
    result = run("report", "--csf", "max-indicator", "--values", "2,1")
    doc = json.loads(result.stdout)
    assert doc["verdict"] == "extractive-witnessed"
    witnesses = doc["strictness_counterwitnesses"]
    assert len(witnesses) == 1
    assert witnesses[0]["certificate"]["profile"] == [0.0, 0.0]


def test_dynamics_csv_converges_to_extraction():
    result = run("dynamics", "--csf", "power:a=2", "--values", "1,1,1",
                 "--init", "0.4,0.4,0", "--rounds", "50")
    assert result.returncode == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "round,player,effort_0,effort_1,effort_2,aggregate"
    first = lines[1].split(",")
    assert first[:2] == ["0", "-1"]
    final_aggregate = float(lines[-1].split(",")[-1])
    assert final_aggregate == pytest.approx(1.0, abs=1e-6)


def test_dynamics_stationary_at_zero_equilibrium():
    result = run("dynamics", "--csf", "max-indicator", "--values", "2,1",
                 "--init", "0,0", "--rounds", "20")
    lines = [line for line in result.stdout.splitlines() if line]
    assert len(lines) == 2  # header + initial profile only
    assert float(lines[1].split(",")[-1]) == 0.0


def test_dynamics_seeded_init_is_reproducible():
    args = ("dynamics", "--csf", "lottery", "--values", "1,1",
            "--rounds", "3", "--seed", "7")
    assert run(*args).stdout == run(*args).stdout


def test_dynamics_json_carries_terminal_certificate():
    result = run("dynamics", "--csf", "power:a=2", "--values", "1,1,1",
                 "--init", "0.4,0.4,0", "--rounds", "50", "--format", "json")
    doc = json.loads(result.stdout)
    assert doc["converged"] is True
    assert doc["terminal"]["extraction_ratio"] == pytest.approx(1.0, abs=1e-6)
    assert doc["trajectory"][0]["player"] == -1


def test_config_file_with_flag_override(tmp_path):
    config = tmp_path / "experiment.json"
    config.write_text(json.dumps({
        "csf": "power:a=2",
        "values": [1, 1],
        "profile": [0.5, 0.5],
    }))
    base = run("verify", "--config", str(config))
    assert base.returncode == 0
    overridden = run("verify", "--config", str(config), "--profile", "0.4,0.4")
    assert overridden.returncode == 1


def test_lemma2_check():
    result = run("lemma2", "--v", "1", "--a", "3", "--b", "2")
    assert result.returncode == 0
    doc = json.loads(result.stdout)
    assert doc["maximizer"] == 0.375
    assert doc["check_passed"] is True
