import json

import numpy as np
import pytest

from polychain import cli


def run_cli(args):
    return cli.main(list(args))


def test_chains_run_writes_csv_and_jsonl(tmp_path):
    out = tmp_path / "summary.csv"
    rec = tmp_path / "records.jsonl"
    assert run_cli(["chains", "run", "--n", "80", "--samples", "3",
                    "--seed", "4", "--out", str(out),
                    "--records", str(rec)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("n,samples,")
    fields = lines[1].split(",")
    assert fields[0] == "80" and fields[1] == "3"
    payload = [json.loads(l) for l in rec.read_text().strip().splitlines()]
    assert len(payload) == 3
    assert all(p["realized_n"] == 80 for p in payload)


def test_chains_table(tmp_path):
    spec = tmp_path / "rows.txt"
    spec.write_text("# comment\nrow = 50 2 exact\n60, 2, auto\n")
    out = tmp_path / "table.csv"
    assert run_cli(["chains", "table", "--spec", str(spec), "--seed", "1",
                    "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 3


def test_chains_table_bad_spec(tmp_path):
    spec = tmp_path / "rows.txt"
    spec.write_text("bogus = 1 2 3\n")
    assert run_cli(["chains", "table", "--spec", str(spec)]) == 1


def test_polar_circle_uniform_is_fixed(tmp_path):
    out = tmp_path / "traj.csv"
    assert run_cli(["polar", "circle", "--uniform", "5",
                    "--phi-steps", "6", "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "step,angle_0,angle_1,angle_2,angle_3,angle_4,M"
    # fixed point: the trajectory stops long before 6 steps
    assert len(lines) <= 4
    first = lines[1].split(",")
    assert float(first[-1]) == pytest.approx(25.0 / 4.0, abs=1e-8)


def test_polar_circle_angles_file_converges(tmp_path):
    ang = tmp_path / "angles.txt"
    ang.write_text("0.0\nangle = 0.1\n0.37\n# trailing comment\n")
    out = tmp_path / "traj.csv"
    assert run_cli(["polar", "circle", "--angles", str(ang),
                    "--phi-steps", "60", "--out", str(out)]) == 0
    rows = [l.split(",") for l in out.read_text().strip().splitlines()[1:]]
    ms = [float(r[-1]) for r in rows]
    assert ms[-1] > ms[0]
    assert ms[-1] <= 9.0 / 4.0 + 1e-6


def test_polar_gram_jsonl(tmp_path):
    vec = tmp_path / "vectors.csv"
    np.savetxt(vec, np.eye(3), delimiter=",")
    out = tmp_path / "scan.jsonl"
    assert run_cli(["polar", "gram", "--vectors", str(vec),
                    "--out", str(out)]) == 0
    lines = [json.loads(l) for l in out.read_text().strip().splitlines()]
    assert len(lines) == 8 + 1
    summary = lines[-1]
    assert summary["summary"] and summary["n"] == 3
    assert summary["min_norm_sq"] == pytest.approx(3.0)


def test_polar_gram_bad_csv(tmp_path):
    vec = tmp_path / "vectors.csv"
    vec.write_text("1.0,5.0\n")
    assert run_cli(["polar", "gram", "--vectors", str(vec)]) == 2


def test_missing_file_is_runtime_error():
    assert run_cli(["chains", "table", "--spec", "/nonexistent/rows.txt"]) == 1


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        run_cli(["chains", "run", "--samples", "3"])  # missing --n
    assert exc.value.code == 2


def test_verify_runs_quickly_via_subset(tmp_path, monkeypatch):
    # run the real command end to end; it is the slowest CLI path but
    # bounded (a few seconds of identity checks plus 100 small oracles)
    out = tmp_path / "verify.txt"
    assert run_cli(["verify", "--out", str(out)]) == 0
    text = out.read_text()
    assert "all suites passed" in text
    assert "FAIL" not in text
