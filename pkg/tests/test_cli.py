"""CLI contract: exit codes, report files, CSV format."""

import csv
import json
import subprocess
import sys

from thetacert.cli import main


def run_cli(*argv):
    return main(list(argv))


def test_eval_exit_zero(capsys):
    assert run_cli("eval", "theta4", "--y", "1") == 0
    out = capsys.readouterr().out
    assert "0.913579138156" in out


def test_eval_negative_argument_usage_error(capsys):
    assert run_cli("eval", "theta4", "--y", "-1") == 2
    assert run_cli("eval", "theta4", "--y", "0") == 2
    assert run_cli("eval", "theta4", "--y", "bogus") == 2


def test_eval_unknown_function_usage_error():
    assert run_cli("eval", "theta9", "--y", "1") == 2


def test_eval_f_small_positive(capsys):
    assert run_cli("eval", "f", "--y", "10") == 0
    out = capsys.readouterr().out
    assert "E-11" in out or "e-11" in out


def test_eval_json_format(capsys):
    assert run_cli("eval", "f''", "--y", "2", "--format", "json") == 0
    data = json.loads(capsys.readouterr().out)
    assert data["schema_version"] == "1"
    lo, hi = data["results"][0]["enclosure"]
    assert float(lo) > 0


def test_eval_order_on_f_rejected(capsys):
    assert run_cli("eval", "f", "--y", "1", "--order", "2") == 2


def test_verify_greek_writes_report(tmp_path, capsys):
    out = tmp_path / "greek.json"
    assert run_cli("verify", "greek", "--json", str(out)) == 0
    data = json.loads(out.read_text())
    values = {r["name"]: r for r in data["results"] if r["type"] == "value"}
    assert set(values) == {"alpha", "beta", "gamma", "delta", "epsilon", "zeta"}
    lo, hi = values["alpha"]["enclosure"]
    assert float(lo) <= 1984.33 <= float(hi) or abs(float(lo) - 1984.323) < 1e-3
    assert data["summary"]["ok"] is True


def test_verify_wrong_sign_exits_one(capsys):
    code = run_cli(
        "verify", "convexity", "--interval", "0.5", "1.0", "--target-sign", "negative"
    )
    assert code == 1


def test_verify_custom_interval_positive(capsys):
    code = run_cli("verify", "convexity", "--interval", "0.5", "1.0", "--target-sign", "positive")
    assert code == 0


def test_verify_envelopes_alias(capsys):
    assert run_cli("verify", "lemma1") == 0


def test_verify_unknown_suite_usage_error():
    assert run_cli("verify", "everything") == 2


def test_scan_witness_at_21(tmp_path, capsys):
    out = tmp_path / "scan.csv"
    assert run_cli("scan", "--a", "2.1", "--csv", str(out), "--resolution", "16") == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "y,f_second_lo,f_second_hi"
    assert any(line.startswith("# witness") for line in lines)
    body = [line for line in lines[1:] if not line.startswith("#")]
    ys = [float(row.split(",")[0]) for row in body]
    assert ys == sorted(ys)
    reader = csv.reader(body)
    for row in reader:
        assert len(row) == 3
        assert float(row[1]) <= float(row[2])


def test_scan_no_witness_at_2(tmp_path, capsys):
    out = tmp_path / "scan2.csv"
    assert run_cli("scan", "--a", "2.0", "--csv", str(out), "--resolution", "16") == 0
    text = out.read_text()
    assert "# witness" not in text
    assert "no witness" in capsys.readouterr().out


def test_scan_bad_exponent_usage_error():
    assert run_cli("scan", "--a", "two-point-one") == 2
    assert run_cli("scan", "--a", "2.1", "--interval", "5", "1") == 2


def test_precision_env_override(capsys, monkeypatch):
    monkeypatch.setenv("THETACERT_PRECISION", "96")
    assert run_cli("eval", "theta4", "--y", "1", "--digits", "20") == 0
    monkeypatch.setenv("THETACERT_PRECISION", "12")  # below the 53-bit floor
    assert run_cli("eval", "theta4", "--y", "1") == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "thetacert.cli", "eval", "theta2", "--y", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "0.41576" in proc.stdout
