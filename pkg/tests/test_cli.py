import csv
import io
import json

import pytest

from biuniv.cli import main
from biuniv.series import TruncatedSeries


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bounds_json(capsys):
    code, out, _ = run(capsys, "bounds", "--m", "2", "--lambda", "0.5", "--phi", "mobius:0.5")
    assert code == 0
    doc = json.loads(out)
    assert doc["bound_a_m1"] == pytest.approx(2 ** -0.5, abs=1e-15)
    assert doc["branch"]["a_2m1"] in ("low-B1", "high-B1")


def test_bounds_csv_matches_json(capsys):
    argv = ["bounds", "--m", "3", "--lambda", "1/4", "--gamma", "1", "--phi", "mobius:0.25"]
    _, j, _ = run(capsys, *argv, "--json")
    _, c, _ = run(capsys, *argv, "--csv")
    doc = json.loads(j)
    row = next(csv.DictReader(io.StringIO(c)))
    for key in ("bound_a_m1", "bound_a_2m1", "fekete_szego"):
        assert float(row[key]) == doc[key]


def test_bounds_text(capsys):
    code, out, _ = run(capsys, "bounds", "--m", "1", "--phi", "power:1", "--text")
    assert code == 0 and "bound_a_m1" in out


def test_bounds_degenerate_flag(capsys):
    _, out, _ = run(capsys, "bounds", "--m", "1", "--phi", "power:0.5")
    doc = json.loads(out)
    assert doc["degenerate"] is True and doc["h_gamma"] is None


@pytest.mark.parametrize("argv, flag", [
    (["bounds", "--m", "0", "--phi", "mobius:0"], "--m"),
    (["bounds", "--m", "1", "--lambda", "1", "--phi", "mobius:0"], "--lambda"),
    (["bounds", "--m", "1", "--phi", "mobius:2"], "--phi"),
    (["bounds", "--m", "1", "--phi", "nope"], "--phi"),
    (["invert", "--m", "1", "--coeffs", "x"], "--coeffs"),
    (["lift", "--m", "2"], "--coeffs"),
    (["lift", "--m", "2", "--function", "sin"], "--function"),
    (["search", "--density", "4"], "--density"),
])
def test_usage_errors(capsys, argv, flag):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err.count("\n") == 1 and flag in err


def test_invert_all_ones(capsys):
    code, out, _ = run(capsys, "invert", "--m", "1", "--coeffs", "1,1,1")
    assert code == 0
    doc = json.loads(out)
    g = TruncatedSeries.from_dict(doc["inverse"])
    assert [complex(c).real for c in g.coeffs] == [0, 1, -1, 1, -1]
    assert doc["inverse"]["coeffs"][2] == ["-1/1", "0/1"]


def test_invert_closed_form_m2(capsys):
    _, out, _ = run(capsys, "invert", "--m", "2", "--coeffs", "1/2,1/3,1/4")
    doc = json.loads(out)
    assert doc["closed_form"]["g_2m1"] == pytest.approx(3 / 4 - 1 / 3)


def test_invert_csv(capsys):
    _, out, _ = run(capsys, "invert", "--m", "1", "--coeffs", "0.5", "--csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [float(r["re"]) for r in rows] == [0, 1, -0.5]


def test_lift_catalog(capsys):
    code, out, _ = run(capsys, "lift", "--m", "3", "--function", "atanh", "--order", "20")
    assert code == 0
    doc = json.loads(out)
    assert doc["mfold_symmetric"] is True
    assert doc["lift"]["order"] == 20


def test_lift_from_file(capsys, tmp_path):
    path = tmp_path / "f.json"
    path.write_text(TruncatedSeries.from_coeffs([0, 1, 1, 1]).to_json())
    code, out, _ = run(capsys, "lift", "--m", "2", "--f", str(path))
    assert code == 0 and json.loads(out)["mfold_symmetric"]


def test_lift_zero_tail_and_missing_file(capsys):
    code, _, err = run(capsys, "lift", "--m", "2", "--coeffs", "0")
    assert code == 0  # a_2 = 0 is still normalized
    path_err = run(capsys, "lift", "--m", "2", "--f", "/nonexistent.json")
    assert path_err[0] == 2 and "--f" in path_err[2]


def _series_file(tmp_path, coeffs):
    path = tmp_path / "f.json"
    path.write_text(TruncatedSeries.from_coeffs(coeffs).to_json())
    return str(path)


def test_check_feasible_and_infeasible(capsys, tmp_path):
    ok = _series_file(tmp_path, [0, 1, 0, "1/10", 0, 0])
    code, out, _ = run(capsys, "check", "--m", "2", "--phi", "mobius:0", "--f", ok)
    assert code == 0
    doc = json.loads(out)
    assert doc["feasible"] is True

    bad = _series_file(tmp_path, [0, 1, 0, "101/100", 0, 0])
    code, out, _ = run(capsys, "check", "--m", "2", "--phi", "mobius:0", "--f", bad)
    assert code == 1
    assert json.loads(out)["feasible"] is False


def test_check_rejects_asymmetric(capsys, tmp_path):
    path = _series_file(tmp_path, [0, 1, 1, 0])
    code, _, err = run(capsys, "check", "--m", "2", "--phi", "mobius:0", "--f", path)
    assert code == 2 and "--f" in err


def test_check_writes_out(capsys, tmp_path):
    path = _series_file(tmp_path, [0, 1, 0])
    out_file = tmp_path / "cert.json"
    code, out, _ = run(capsys, "check", "--m", "1", "--phi", "mobius:0.5", "--f", path, "--out", str(out_file))
    assert code == 0 and out == ""
    assert json.loads(out_file.read_text())["feasible"] is True


def _grid(tmp_path, **kw):
    grid = {"m": [1, 2], "lambda": [0, 0.25], "phi": ["mobius:0.5", "power:1"], "gamma": [0, "(m+1)/2"]}
    grid.update(kw)
    path = tmp_path / "grid.json"
    path.write_text(json.dumps(grid))
    return str(path)


def test_search_grid_file(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--grid", _grid(tmp_path), "--density", "8")
    assert code == 0
    doc = json.loads(out)
    assert doc["violations"] == []
    assert len(doc["cells"]) == 8 * 4
    assert "not sharpness" in doc["scope"]


def test_search_is_deterministic(capsys, tmp_path):
    argv = ["search", "--grid", _grid(tmp_path), "--density", "8", "--random", "200"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_search_csv_matches_json(capsys, tmp_path):
    argv = ["search", "--grid", _grid(tmp_path), "--density", "8", "--functional", "abs_a_2m1"]
    _, j, _ = run(capsys, *argv)
    _, c, _ = run(capsys, *argv, "--csv")
    cells = json.loads(j)["cells"]
    rows = list(csv.DictReader(io.StringIO(c)))
    assert len(rows) == len(cells)
    for row, cell in zip(rows, cells):
        assert float(row["empirical"]) == cell["empirical"]
        assert float(row["theoretical"]) == cell["theoretical"]


def test_search_empty_grid(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--grid", _grid(tmp_path, m=[]), "--density", "8")
    assert code == 0 and json.loads(out)["cells"] == []


def test_search_bad_grid(capsys, tmp_path):
    code, _, err = run(capsys, "search", "--grid", _grid(tmp_path, m=[0]))
    assert code == 2 and "--grid" in err


def test_corollaries(capsys):
    code, out, _ = run(capsys, "corollaries", "--phi", "mobius:0.5")
    assert code == 0
    rows = json.loads(out)["rows"]
    flagged = [r for r in rows if r["corollary"] == "fs-onefold-gamma1" and r["status"] == "mismatch"]
    assert flagged


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", "--csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {"family", "bound_a_m1", "reference_a_m1"} <= set(rows[0])
