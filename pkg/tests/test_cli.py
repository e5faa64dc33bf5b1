import csv
import io
import json
import subprocess
import sys

import pytest

from torsorcount.cli import main, parse_B

BROKEN = {"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [2, 0]]}


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_B():
    assert parse_B("100,1000") == [100, 1000]
    assert parse_B("10..10000") == [10, 100, 1000, 10000]


def test_count_two_rows(capsys):
    code, out, err = run_cli(capsys, "count", "--fan", "P1xP1", "--field-D", "1", "--B", "100,1000")
    assert code == 0 and err == ""
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:5] == ["B", "N_direct", "N_moebius", "per_class_counts", "seconds"]
    assert {"predicted", "ratio"} <= set(rows[0])
    assert len(rows) == 3
    assert [r[0] for r in rows[1:]] == ["100", "1000"]
    assert all("." not in r[1] for r in rows[1:])


def test_count_moebius_column(capsys):
    code, out, _ = run_cli(capsys, "count", "--fan", "P2", "--field-D", "5", "--B", "10,50", "--moebius")
    assert code == 0
    for row in list(csv.DictReader(io.StringIO(out))):
        assert row["N_direct"] == row["N_moebius"]


def test_check_broken_fan(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(BROKEN))
    code, out, err = run_cli(capsys, "check", "--fan-file", str(path))
    assert code == 3 and out == ""
    lines = err.strip().splitlines()
    assert len(lines) == 1
    msg = json.loads(lines[0])
    assert msg["reason"].startswith("incomplete: wall")


def test_check_library_fan(capsys):
    code, out, _ = run_cli(capsys, "check", "--fan", "F1")
    js = json.loads(out)
    assert code == 0 and js["globally_generated"] and js["r"] == 2 and js["max_cones"] == 4


def test_constant_json(capsys):
    code, out, _ = run_cli(capsys, "constant", "--fan", "P2", "--field-D", "5", "--prime-bound", "10000")
    assert code == 0
    js = json.loads(out)
    lo, hi = map(float, js["C_interval"])
    assert lo <= float(js["C_numeric"]) <= hi
    assert js["kappa"]["prime_norm_bound"] == 10000


def test_convergence_trend(capsys):
    code, out, _ = run_cli(capsys, "convergence", "--fan", "P1", "--field-D", "1", "--B", "10..10000")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4
    assert rows[0]["trend"] == "" and all(r["trend"] in ("toward", "away") for r in rows[1:])


def test_output_file_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        args = ["count", "--fan", "P1", "--field-D", "5", "--B", "10,100", "--seed", "3", "--out", str(p)]
        assert main(args) == 0
    assert a.read_bytes() == b.read_bytes()
    assert sorted(x.name for x in tmp_path.iterdir()) == ["a.csv", "b.csv"]


def test_failure_leaves_no_files(tmp_path, capsys):
    out = tmp_path / "x.csv"
    code, _, _ = run_cli(capsys, "count", "--fan", "P1", "--field-D", "4", "--B", "10", "--out", str(out))
    assert code == 2
    assert list(tmp_path.iterdir()) == []


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "--fan", "P9", "--field-D", "1", "--B", "10"],
        ["count", "--fan", "P1", "--field-D", "1", "--B", "100,10"],
        ["count", "--fan", "P1", "--fan-file", "x.json", "--field-D", "1", "--B", "10"],
        ["constant", "--fan", "P1", "--field-D", "1", "--prime-bound", "1"],
        ["frobnicate"],
    ],
)
def test_config_errors(argv, capsys):
    code, out, err = run_cli(capsys, *argv)
    assert code == 2 and out == ""
    assert json.loads(err)["exit"] == 2


def test_non_gg_is_hypothesis_failure(tmp_path, capsys):
    f3 = {"dim": 2, "rays": [[1, 0], [0, 1], [-1, 3], [0, -1]], "max_cones": [[0, 1], [1, 2], [2, 3], [3, 0]]}
    path = tmp_path / "f3.json"
    path.write_text(json.dumps(f3))
    code, _, err = run_cli(capsys, "count", "--fan-file", str(path), "--field-D", "1", "--B", "10")
    assert code == 3 and "globally generated" in err


def test_budget_exceeded(capsys):
    code, out, err = run_cli(capsys, "count", "--fan", "P1xP1", "--field-D", "1", "--B", "100000", "--budget", "1000")
    assert code == 4 and out == ""
    assert json.loads(err)["error"] == "budget"


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"mode": "count", "fan": "P1", "field": {"D": 1}, "B": [1, 10]}))
    code, out, _ = run_cli(capsys, "count", "--config", str(cfg))
    assert code == 0
    assert next(r["N_direct"] for r in csv.DictReader(io.StringIO(out))) == "4"


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "torsorcount", "check", "--fan", "P2"], capture_output=True, text=True, check=False
    )
    assert res.returncode == 0 and json.loads(res.stdout)["f"] == 3
