import csv
import json

import numpy as np
import pytest

import spherepack.cli as cli
from spherepack.radius_search import UpperBoundInfeasible


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_two_spheres_prints_record_ratio(capsys):
    code, out, err = run_cli(capsys, "solve", "--n", "2", "--kind", "sphere")
    assert code == 0
    n, kind, ratio, r0_min, delta = out.split()
    assert (n, kind) == ("2", "sphere")
    assert abs(float(ratio) - 0.5) < 1e-6
    assert abs(float(delta)) < 1e-6
    assert float(r0_min) == pytest.approx(1.0, abs=1e-5)
    assert "wall clock" in err  # timing goes to stderr, not stdout


def test_solve_one_cube_sphere(capsys):
    code, out, _ = run_cli(capsys, "solve", "--n", "1", "--kind", "cube")
    assert code == 0
    assert abs(float(out.split()[2]) - 1.0) < 1e-6


def test_solve_three_spheres_matches_closed_form(capsys):
    code, out, _ = run_cli(capsys, "solve", "--n", "3", "--kind", "sphere")
    assert code == 0
    ratio = float(out.split()[2])
    assert abs(ratio - (2 * 3 ** 0.5 - 3)) < 1e-5


def test_solve_writes_packing_and_report(tmp_path, capsys):
    out_path = tmp_path / "pack.txt"
    code, _, _ = run_cli(capsys, "solve", "--n", "4", "--kind", "cube",
                         "--runs", "2", "--out", str(out_path))
    assert code == 0
    assert out_path.exists()
    report = json.loads((tmp_path / "pack.txt.report.json").read_text())
    assert report["n"] == 4
    assert report["kind"] == "cube"
    assert len(report["centers"]) == 4

    # closed loop: the emitted packing file verifies
    code, out, _ = run_cli(capsys, "verify", str(out_path))
    assert code == 0
    assert "valid" in out


def test_solve_unknown_kind_is_usage_error(capsys):
    with pytest.raises(SystemExit):
        cli.main(["solve", "--n", "2", "--kind", "torus"])


def test_solve_infeasible_estimate_exits_nonzero(monkeypatch, capsys):
    def always_infeasible(*args, **kwargs):
        raise UpperBoundInfeasible(1.0, 0.5)

    monkeypatch.setattr(cli, "solve_instance", always_infeasible)
    code, out, err = run_cli(capsys, "solve", "--n", "2", "--kind", "sphere",
                             "--runs", "1")
    assert code == 1
    assert "solve failed" in err


def test_verify_detects_overlap(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("n=2\nkind=sphere\nr0=5\nr=0.5\n1 0 0 0\n2 0.9 0 0\n")
    code, out, _ = run_cli(capsys, "verify", str(bad))
    assert code == 1
    assert "pair" in out
    assert "0.1" in out


def test_verify_valid_file_prints_margins(tmp_path, capsys):
    good = tmp_path / "good.txt"
    good.write_text("n=2\nkind=sphere\nr0=1\nr=0.5\n1 -0.5 0 0\n2 0.5 0 0\n")
    code, out, _ = run_cli(capsys, "verify", str(good))
    assert code == 0
    assert "wall margin" in out and "pair margin" in out


def test_verify_truncated_file_exits_two(tmp_path, capsys):
    broken = tmp_path / "broken.txt"
    broken.write_text("n=3\nkind=sphere\nr0=1\n")
    code, _, err = run_cli(capsys, "verify", str(broken))
    assert code == 2
    assert err


def test_bench_small_sphere_range(tmp_path, capsys):
    csv_path = tmp_path / "bench.csv"
    code, out, _ = run_cli(capsys, "bench", "--kind", "sphere",
                           "--n-min", "2", "--n-max", "3",
                           "--runs", "2", "--out", str(csv_path))
    assert code == 0
    lines = [l for l in out.splitlines() if l.strip()]
    assert len(lines) >= 3  # header plus one row per n
    rows = list(csv.DictReader(csv_path.open()))
    assert [r["n"] for r in rows] == ["2", "3"]
    for row in rows:
        assert float(row["delta"]) >= -1e-4


def test_bench_empty_range_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "bench", "--kind", "cube",
                           "--n-min", "5", "--n-max", "3")
    assert code == 2
    assert "n-min" in err or "usage" in err.lower()


def test_plotdata_csv_and_json(tmp_path, capsys):
    packing = tmp_path / "p.txt"
    packing.write_text("n=2\nkind=sphere\nr0=1\nr=0.5\n1 -0.5 0 0\n2 0.5 0 0\n")

    code, out, _ = run_cli(capsys, "plotdata", str(packing), "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("#")
    assert "kind=sphere" in lines[0]
    assert len([l for l in lines if l and not l.startswith("#")]) == 3  # header + 2 rows

    json_path = tmp_path / "p.json"
    code, _, _ = run_cli(capsys, "plotdata", str(packing), "--format", "json",
                         "--out", str(json_path))
    assert code == 0
    payload = json.loads(json_path.read_text())
    assert payload["kind"] == "sphere"
    assert payload["r0"] == 1.0
    assert payload["r"] == 0.5
    assert len(payload["centers"]) == 2


def test_plotdata_unknown_format_is_usage_error(tmp_path, capsys):
    packing = tmp_path / "p.txt"
    packing.write_text("n=1\nkind=cube\nr0=1\nr=0.5\n1 0 0 0\n")
    with pytest.raises(SystemExit):
        cli.main(["plotdata", str(packing), "--format", "yaml"])


def test_plotdata_invalid_packing_exits_two(tmp_path, capsys):
    broken = tmp_path / "nope.txt"
    broken.write_text("garbage")
    code, _, _ = run_cli(capsys, "plotdata", str(broken), "--format", "csv")
    assert code == 2


def test_solve_stdout_is_deterministic(capsys):
    code1, out1, _ = run_cli(capsys, "solve", "--n", "6", "--kind", "sphere",
                             "--seed", "3", "--runs", "2")
    code2, out2, _ = run_cli(capsys, "solve", "--n", "6", "--kind", "sphere",
                             "--seed", "3", "--runs", "2")
    assert code1 == code2 == 0
    assert out1 == out2


def test_scan_limit_and_eps_flags_accepted(capsys):
    code, out, _ = run_cli(capsys, "solve", "--n", "2", "--kind", "sphere",
                           "--scan-limit", "2", "--eps", "1e-9", "--runs", "1")
    assert code == 0
    assert abs(float(out.split()[2]) - 0.5) < 1e-4
