from __future__ import annotations

import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from shtukas import schemas
from shtukas.cli import InputError, main, parse_range

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert parse_range("3") == [3]
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("1,4..5") == [1, 4, 5]
    with pytest.raises(InputError):
        parse_range("5..1")


def test_tower_level_two(capsys):
    code, out, _ = run(["tower", "--q", "3", "--level", "2"], capsys)
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, schemas.TOWER_RUN)
    assert data["degree"] == 18
    assert data["valuations"] == ["1/2", "1/6", "1/18"]
    assert data["carlitz_residual_zero"] and data["ok"]


def test_tower_level_zero(capsys):
    code, out, _ = run(["tower", "--q", "3", "--level", "0"], capsys)
    assert code == 0 and json.loads(out)["degree"] == 2


@pytest.mark.parametrize("argv", [
    ["tower", "--q", "4", "--level", "1"],
    ["tower", "--q", "6", "--level", "1"],
    ["tower", "--q", "3", "--level", "-1"],
    ["tower", "--q", "3", "--level", "1", "--zeta-prec", "0"],
    ["openness", "--q", "3", "--d", "0", "--level", "1"],
    ["openness", "--q", "3", "--d", "3..1", "--level", "1"],
])
def test_bad_input_exits_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert err.startswith("error:")


def test_openness_examples(capsys):
    code, out, _ = run(["openness", "--q", "3", "--d", "2,3", "--level", "2"], capsys)
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, schemas.OPENNESS_RUN)
    d2, d3 = data["reports"]
    assert d2["open_in_full"] and d2["full_index"] == 2
    assert not d3["open_in_full"]


def test_openness_sweep_csv_and_summary(capsys):
    code, out, err = run(
        ["openness", "--q", "3", "--d", "1..9", "--level", "3", "--format", "csv", "--summary"], capsys
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 9
    assert [int(r["d"]) for r in rows] == list(range(1, 10))
    assert "full_index" in err.splitlines()[0]


def test_openness_size_cap(capsys):
    code, out, err = run(["openness", "--q", "5", "--d", "2", "--level", "1..6", "--cap", "3000"], capsys)
    assert code == 3
    data = json.loads(out)
    assert data["partial"] and len(data["reports"]) == 4
    assert "partial" in err


@pytest.mark.parametrize("name, dim, verdict", [
    ("carlitz_t.json", 1, "Open"),
    ("carlitz_t2p1.toml", 1, "Open"),
    ("carlitz_cubed.json", 3, "NotOpen"),
])
def test_motive(name, dim, verdict, capsys):
    code, out, _ = run(["motive", str(DATA / name), "--zeta-prec", "16", "--z-prec", "4"], capsys)
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, schemas.MOTIVE_RUN)
    assert (data["rank"], data["dim"], data["verdict"]) == (1, dim, verdict)
    assert data["normal_form"]["verified"]


def test_motive_degree_two_place_reports_f_v(capsys):
    _, out, _ = run(["motive", str(DATA / "carlitz_t2p1.toml"), "--zeta-prec", "16", "--z-prec", "4"], capsys)
    place = json.loads(out)["place"]
    assert place["f_v"] == 2 and place["field"]["modulus"] == [1, 0, 1]


def test_motive_missing_file(capsys, tmp_path):
    code, _, err = run(["motive", str(tmp_path / "nope.json")], capsys)
    assert code == 2 and "error" in err


def test_motive_malformed_file(capsys, tmp_path):
    path = tmp_path / "bad.toml"
    path.write_text("q = 3\nv = [0, 1]\n")
    code, _, err = run(["motive", str(path)], capsys)
    assert code == 2 and "missing field 'T'" in err


def test_motive_reducible_place(capsys, tmp_path):
    path = tmp_path / "red.json"
    path.write_text(json.dumps({"q": 3, "T": [[[[0, 2], 1]]], "v": [2, 0, 1]}))
    code, _, err = run(["motive", str(path)], capsys)
    assert code == 2 and "ReduciblePlace" in err


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(["tower", "--q", "5", "--level", "1", "--output", str(target)], capsys)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["degree"] == 20


def test_selftest(capsys):
    code, out, _ = run(["selftest"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5 and all(line.startswith("PASS") for line in lines)


def test_runs_are_byte_identical():
    argv = [sys.executable, "-m", "shtukas.cli", "openness", "--q", "3", "--d", "1..6", "--level", "0..2"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "shtukas.cli", "tower", "--q", "4", "--level", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2
    assert "odd prime power" in proc.stderr
