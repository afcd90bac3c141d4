import json

import pytest

from piercelab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_expand_worked_example(capsys):
    code, out, _ = run_cli(capsys, "expand", "13", "35")
    assert code == 0
    assert "P(13, 35) = 6" in out
    assert "13 9 8 3 2 1 0" in out
    assert "2 3 4 11 17 35" in out
    assert "13/35" in out


def test_expand_whole_number(capsys):
    code, out, _ = run_cli(capsys, "expand", "35", "35")
    assert code == 0
    assert "P(35, 35) = 1" in out
    assert "digits:    1" in out


def test_expand_longer_orbit_json(capsys):
    code, out, _ = run_cli(capsys, "expand", "22", "35", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["length"] == 7
    assert doc["terms"] == [22, 13, 9, 8, 3, 2, 1, 0]
    assert doc["reconstruction"] == "22/35"


def test_expand_above_modulus_skips_digits(capsys):
    code, out, _ = run_cli(capsys, "expand", "36", "35")
    assert code == 0
    assert "digits" not in out


def test_expand_usage_error(capsys):
    code, _, _ = run_cli(capsys, "expand", "0", "35")
    assert code == 2


def test_pmax_command(capsys):
    code, out, _ = run_cli(capsys, "pmax", "35")
    assert code == 0
    assert "P(35) = 7" in out and "22" in out
    code, out, _ = run_cli(capsys, "pmax", "35", "--naive", "--format", "json")
    assert json.loads(out) == {"n": 35, "pmax": 7, "argmax": 22}


def test_profile_table(capsys):
    code, out, _ = run_cli(capsys, "profile", "13", "35")
    assert code == 0
    assert out.count("pass") == 6  # five buckets + overall
    code, out, _ = run_cli(capsys, "profile", "13", "35", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "n,A_exponent,T,bound,pass"
    assert len(lines) == 6


def test_gamma_point_and_optimize(capsys):
    code, out, _ = run_cli(capsys, "gamma", "--delta", "2/177", "--lambda", "6/177")
    assert code == 0
    assert "gamma=2/177" in out
    code, out, _ = run_cli(capsys, "gamma", "--optimize")
    assert code == 0
    assert "delta=2/177 lambda=2/59 gamma=2/177" in out
    code, out, _ = run_cli(capsys, "gamma", "--optimize", "--format", "json")
    doc = json.loads(out)
    assert doc["gamma"] == "2/177" and doc["overall_exponent"] == "19/59"


def test_gamma_usage_errors(capsys):
    code, _, err = run_cli(capsys, "gamma")
    assert code == 2
    code, _, err = run_cli(capsys, "gamma", "--optimize", "--delta", "1/2")
    assert code == 2


def test_witness_commands(capsys):
    code, out, _ = run_cli(capsys, "witness", "arithmetic", "--m", "10")
    assert code == 0
    assert "n = 2519" in out and "10" in out
    code, out, _ = run_cli(capsys, "witness", "archimedean", "--n", "1000000", "--format", "json")
    doc = json.loads(out)
    assert doc["start"] == 632120
    assert doc["per_k"][0]["a_k"] == 367880
    assert doc["per_k"][0]["pass"] is True
    code, _, _ = run_cli(capsys, "witness", "arithmetic")
    assert code == 2


def test_scan_csv_and_out_file(tmp_path, capsys):
    out_path = str(tmp_path / "rec.csv")
    code, out, _ = run_cli(capsys, "scan", "1", "100", "--out", out_path)
    assert code == 0
    lines = open(out_path).read().splitlines()
    assert lines[0] == "n,pmax,argmax,pmax_over_log_n,pmax_over_cuberoot_n"
    assert lines[1].split(",")[:3] == ["1", "1", "1"]
    assert lines[-1].split(",")[:3] == ["95", "10", "61"]


def test_scan_determinism_across_workers(tmp_path, capsys):
    p1 = str(tmp_path / "w1.csv")
    p2 = str(tmp_path / "w2.csv")
    assert run_cli(capsys, "scan", "1", "2000", "--workers", "1", "--out", p1)[0] == 0
    assert run_cli(capsys, "scan", "1", "2000", "--workers", "4", "--out", p2)[0] == 0
    assert open(p1, "rb").read() == open(p2, "rb").read()


def test_verify_core_tiny(capsys):
    code, out, _ = run_cli(capsys, "verify", "core", "--n-max", "1")
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_verify_unknown_suite(capsys):
    code, _, _ = run_cli(capsys, "verify", "everything")
    assert code == 2


def test_config_file_defaults_and_flag_priority(tmp_path, capsys):
    cfg = tmp_path / "scan.conf"
    cfg.write_text("format=json\nseed=9\n")
    code, out, _ = run_cli(capsys, "pmax", "35", "--config", str(cfg))
    assert code == 0
    assert json.loads(out)["pmax"] == 7  # format came from the file
    code, out, _ = run_cli(capsys, "pmax", "35", "--config", str(cfg), "--format", "text")
    assert code == 0
    assert out.startswith("P(35)")  # explicit flag wins


def test_version_flag(capsys):
    code, out, _ = run_cli(capsys, "--version")
    assert code == 0
    assert "piercelab" in out
