import csv
import io
import json
import math

import numpy as np
import pytest

from dyadik import cli
from dyadik.cli import RunConfig, _fmt, evaluate_function, run
from dyadik.engine import TruncationPlan


def run_csv(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, list(csv.DictReader(io.StringIO(out)))


def test_eval_ei_plus(capsys):
    code, rows = run_csv(capsys, "eval", "--fn", "ei_plus", "--x", "5", "--target", "1e-8")
    assert code == 0 and len(rows) == 1
    assert float(rows[0]["abs_error"]) < 1e-8
    assert list(rows[0]) == list(cli.ROW_FIELDS)


def test_eval_psi(capsys):
    code, rows = run_csv(capsys, "eval", "--fn", "psi", "--x", "1", "--target", "1e-10")
    assert code == 0
    assert abs(float(rows[0]["value_re"]) - 0.4227843) < 1e-7


def test_pole_ray_exits_two(capsys):
    assert run(["eval", "--fn", "ei_plus", "--x-arg", "-90deg", "--x-mag", "3"]) == 2
    assert "pole ray" in capsys.readouterr().err


def test_outside_sheet_exits_two(capsys):
    assert run(["eval", "--fn", "ei_plus", "--x-arg", "-2rad", "--x-mag", "3"]) == 2


def test_angle_needs_suffix():
    with pytest.raises(SystemExit) as exc:
        run(["eval", "--fn", "ei_plus", "--x-arg", "0", "--x-mag", "3"])
    assert exc.value.code == 2


def test_tolerance_not_met_exits_one(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    plan.write_text(TruncationPlan(3, (), 1).to_json())
    code, rows = run_csv(capsys, "eval", "--fn", "ei_plus", "--x", "5", "--plan-file", str(plan), "--target", "1e-12")
    assert code == 1 and float(rows[0]["abs_error"]) > 1e-12


def test_csv_round_trip_is_bit_identical(tmp_path, capsys):
    out = tmp_path / "rows.csv"
    assert run(["eval", "--fn", "ei_plus", "--x-grid", "2:10:3", "--x-arg", "30deg", "--out", str(out)]) == 0
    with open(out) as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 3
    cfg = RunConfig(command="eval", function="ei_plus", target=1e-8)
    for r in rows:
        x = complex(float(r["x_re"]), float(r["x_im"]))
        res, _ = evaluate_function(cfg, x, math.radians(30))
        assert _fmt(res.value.real) == r["value_re"] and _fmt(res.value.imag) == r["value_im"]


def test_json_mirrors_csv(capsys):
    assert run(["eval", "--fn", "erfc", "--x", "2", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["columns"] == list(cli.ROW_FIELDS)
    assert float(doc["rows"][0]["abs_error"]) < 1e-8


def test_plan_prints_loadable_plan(capsys):
    assert run(["plan", "--fn", "ei_plus", "--x-grid", "4:20:3", "--x-arg", "0rad", "--target", "1e-8"]) == 0
    plan = TruncationPlan.from_json(capsys.readouterr().out)
    assert plan.n > 0 and plan.N >= 1


def test_plan_unsupported_function(capsys):
    assert run(["plan", "--fn", "psi", "--x", "2"]) == 2


def test_stokes_scan_half_residue(capsys):
    code, rows = run_csv(capsys, "stokes-scan", "--x-grid", "1:14:6")
    assert code == 0
    col = np.array([float(r["exp_x_im_f"]) for r in rows])
    assert np.all(np.abs(col / col[0] - 1) < 0.01)
    assert abs(col[0] + math.pi) < 1e-6


def test_antistokes_scan_oscillates(capsys):
    code, rows = run_csv(capsys, "stokes-scan", "--scan", "antistokes", "--x-grid", "0.5:12:24")
    assert code == 0
    left = np.array([float(r["left_abs_error"]) for r in rows])
    assert np.all(left < 1e-8)
    # the right side carries 2 pi i e^{-x} with |e^{-x}| = e^{-0.3}: real part changes sign about every pi
    re = np.array([float(r["right_re"]) for r in rows])
    amp = np.abs(np.array([complex(float(r["right_re"]), float(r["right_im"])) for r in rows]))
    assert np.sum(np.diff(np.sign(re)) != 0) >= 3
    t = np.array([float(r["t"]) for r in rows])
    assert np.all(np.abs(amp[t >= 4] / (2 * math.pi * math.exp(-0.3)) - 1) < 0.1)


def test_accuracy_report_airy_digits(capsys):
    code, rows = run_csv(capsys, "accuracy-report", "--fn", "airy", "--x-grid", "4:20:5", "--target", "1e-12")
    assert code == 0
    assert all(float(r["digits"]) >= 12 for r in rows if r["section"] == "error")


def test_accuracy_report_term_table(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    plan.write_text(TruncationPlan(10, (5, 3, 2), 4).to_json())
    run(["accuracy-report", "--fn", "ei_plus", "--x", "4", "--plan-file", str(plan), "--target", "1e-1"])
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    terms = [r for r in rows if r["section"] == "terms"]
    assert [int(r["k"]) for r in terms].count(0) == 10
    assert [int(r["k"]) for r in terms].count(1) == 5


def test_resolvent_demo(tmp_path, capsys):
    m = tmp_path / "m.txt"
    m.write_text("2\n2 0 1 0\n1 0 2 0\n")
    code, rows = run_csv(capsys, "resolvent-demo", "--matrix", str(m), "--N", "10", "20", "30", "--target", "1e-7")
    assert code == 0
    errs = [float(r["resolvent_error"]) for r in rows]
    assert errs[-1] < 1e-7 and errs[0] > errs[1] > errs[2]
    for r in rows:
        assert float(r["predicted_error"]) == pytest.approx(float(r["resolvent_error"]), rel=1e-3)


def test_decompose_demo(capsys):
    code, rows = run_csv(capsys, "decompose-demo", "--poles", "1,-2+1i", "--residues", "1,0.5")
    assert code == 0
    for r in rows:
        assert float(r["entire_part_jump"]) < 1e-8
        assert float(r["entire_part_residue"]) < 1e-8
