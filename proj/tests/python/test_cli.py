import json
import os
import subprocess

import pytest


def run_cli(cli_path, *args, cwd=None):
    return subprocess.run(
        [cli_path, *args], capture_output=True, text=True, cwd=cwd, timeout=300
    )


def test_version(cli_path):
    out = run_cli(cli_path, "--version")
    assert out.returncode == 0
    assert out.stdout.strip()


def test_analyze_csv(cli_path, tmp_path):
    obs = tmp_path / "obs.txt"
    obs.write_text("1.0 ZIII\n1.0 XXXX\n")
    out_file = tmp_path / "report.csv"
    out = run_cli(
        cli_path, "analyze", "--ansatz", "efficientsu2", "--n", "4", "--depth", "1",
        "--obs", str(obs), "--state", "zero", "--samples", "2000", "--seed", "1",
        "--out", str(out_file),
    )
    assert out.returncode == 0, out.stderr
    lines = out_file.read_text().splitlines()
    assert lines[0].startswith("# version=")
    assert lines[1].startswith("# config=")
    header = lines[2].split(",")
    assert header == [
        "n", "alpha_label", "coeff", "n_samples", "exact",
        "lower", "lower_ci_lo", "lower_ci_hi",
        "variance", "var_ci_lo", "var_ci_hi",
        "upper", "upper_ci_lo", "upper_ci_hi", "omega",
    ]
    assert any(row.split(",")[1] == "total" for row in lines[3:])

    # identical invocation reproduces the file byte for byte
    out_file2 = tmp_path / "report2.csv"
    rerun = run_cli(
        cli_path, "analyze", "--ansatz", "efficientsu2", "--n", "4", "--depth", "1",
        "--obs", str(obs), "--state", "zero", "--samples", "2000", "--seed", "1",
        "--out", str(out_file2),
    )
    assert rerun.returncode == 0
    assert out_file.read_bytes() == out_file2.read_bytes()


def test_analyze_exit_codes(cli_path, tmp_path):
    obs = tmp_path / "obs.txt"
    obs.write_text("1.0 ZI\n")

    missing = run_cli(cli_path, "analyze", "--circuit", "no-such-file.json",
                      "--obs", str(obs))
    assert missing.returncode == 2

    broken = tmp_path / "broken.json"
    broken.write_text("{ not json")
    parse_err = run_cli(cli_path, "analyze", "--circuit", str(broken), "--obs", str(obs))
    assert parse_err.returncode == 2

    conflict = run_cli(cli_path, "analyze", "--circuit", str(broken), "--ansatz",
                       "efficientsu2", "--n", "2", "--obs", str(obs))
    assert conflict.returncode == 2


def test_invalid_class_gating(cli_path, tmp_path, fixtures_dir):
    circuit = os.path.join(fixtures_dir, "nonadjacent_layers.json")
    obs = tmp_path / "obs.txt"
    obs.write_text("1.0 XZ\n")
    blocked = run_cli(cli_path, "analyze", "--circuit", circuit, "--obs", str(obs),
                      "--samples", "64")
    assert blocked.returncode == 3

    allowed = run_cli(cli_path, "analyze", "--circuit", circuit, "--obs", str(obs),
                      "--samples", "64", "--allow-invalid-class")
    assert allowed.returncode == 0


def test_analyze_mixed_state(cli_path, tmp_path):
    obs = tmp_path / "obs.txt"
    obs.write_text("1.0 ZI\n")
    bloch = tmp_path / "bloch.json"
    bloch.write_text("[[0.0, 0.0, 0.5], [0.6, 0.0, 0.8]]")
    out = run_cli(
        cli_path, "analyze", "--ansatz", "efficientsu2", "--n", "2", "--depth", "0",
        "--obs", str(obs), "--state", "mixed", "--bloch", str(bloch),
        "--samples", "64", "--seed", "1", "--format", "json",
    )
    assert out.returncode == 0, out.stderr
    doc = json.loads(out.stdout)
    # omega = prod of (|r|^2 - r_Y^2) = 0.25 * 1.0 for the Y-first layer
    assert doc["total"]["omega"] == pytest.approx(0.25)
    assert doc["total"]["exact"] is True


def test_sweep(cli_path, tmp_path):
    out_file = tmp_path / "sweep.csv"
    out = run_cli(
        cli_path, "sweep", "--ansatz", "efficientsu2", "--depth-rule", "log2",
        "--obs-rule", "z0", "--n-list", "4,6", "--samples", "1000", "--seed", "2",
        "--out", str(out_file),
    )
    assert out.returncode == 0, out.stderr
    lines = [l for l in out_file.read_text().splitlines() if not l.startswith("#")]
    assert lines[0] == "n,lower,variance,upper"
    assert len(lines) == 3


def test_oracle_json(cli_path, tmp_path):
    out_file = tmp_path / "moments.json"
    out = run_cli(
        cli_path, "oracle", "--ansatz", "efficientsu2", "--n", "2", "--depth", "0",
        "--obs-text", "1.0 ZI;1.0 IX", "--samples", "20000", "--seed", "7",
        "--reduction-term", "ZI", "--out", str(out_file),
    )
    assert out.returncode == 0, out.stderr
    doc = json.loads(out_file.read_text())
    assert doc["n_samples"] == 20000
    assert "pairs" in doc and len(doc["pairs"]) == 1
    assert abs(doc["reduction_check"]["z"]) < 4.0

    cap = run_cli(cli_path, "oracle", "--ansatz", "efficientsu2", "--n", "13",
                  "--depth", "0", "--obs-text", "1.0 " + "Z" + "I" * 12,
                  "--samples", "10")
    assert cap.returncode == 4


def test_qgan_bound(cli_path, tmp_path):
    out_file = tmp_path / "bound.csv"
    out = run_cli(
        cli_path, "qgan", "bound", "--n", "4", "--layers", "1", "--width", "8",
        "--gamma", "0.2", "--draws", "1500", "--seed", "3", "--out", str(out_file),
    )
    assert out.returncode == 0, out.stderr
    lines = [l for l in out_file.read_text().splitlines() if not l.startswith("#")]
    assert lines[0] == "n,L,widths,gamma,sigma_out_sq,bound,empirical,stderr,pass"
    fields = lines[1].split(",")
    assert fields[0] == "4" and fields[-1] == "1"


def test_sweep_gradient_param(cli_path, tmp_path):
    out_file = tmp_path / "grad_sweep.csv"
    out = run_cli(
        cli_path, "sweep", "--ansatz", "efficientsu2", "--depth-rule", "1",
        "--obs-rule", "mixed", "--n-list", "4", "--gradient-param", "0",
        "--samples", "500", "--seed", "4", "--out", str(out_file),
    )
    assert out.returncode == 0, out.stderr
    lines = [l for l in out_file.read_text().splitlines() if not l.startswith("#")]
    assert len(lines) == 2


def test_qgan_profile(cli_path, tmp_path):
    out_file = tmp_path / "profile.csv"
    out = run_cli(
        cli_path, "qgan", "profile", "--n", "3", "--layers", "1", "--width", "8",
        "--gamma", "0.2", "--depth", "1", "--samples", "4096", "--seed", "6",
        "--out", str(out_file),
    )
    assert out.returncode == 0, out.stderr
    rows = [l for l in out_file.read_text().splitlines() if not l.startswith("#")]
    assert rows[0] == "k,term_count,sum_coeff_sq,contribution,contribution_ci_lo,contribution_ci_hi"
    assert len(rows) == 2 + 3  # header + weights 0..3


def test_counterexamples(cli_path):
    out = run_cli(cli_path, "counterexamples")
    assert out.returncode == 0, out.stdout + out.stderr
    assert "5/5 passed" in out.stdout


def test_build_matches_fixture_files(cli_path, tmp_path, fixtures_dir):
    for name in ("nonadjacent_layers", "pure_ry", "nonclifford_t", "narrowed_range",
                 "initial_z_rotation", "lightcone_demo"):
        out_file = tmp_path / f"{name}.json"
        out = run_cli(cli_path, "build", "--fixture", name, "--out", str(out_file))
        assert out.returncode == 0
        committed = os.path.join(fixtures_dir, f"{name}.json")
        assert json.loads(out_file.read_text()) == json.loads(open(committed).read())
