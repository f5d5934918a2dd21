import io
import json
import math

import pytest

from hydrogrip import Finger, GripperParams, free_pressure
from hydrogrip.cli import run_command
from hydrogrip.config import default_config_text


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def read_csv(path):
    text = path.read_bytes().decode()
    assert "\r" not in text
    lines = text.strip("\n").split("\n")
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


def test_pressure_curve(tmp_path):
    out = tmp_path / "pc.csv"
    assert run(["pressure-curve", "--theta-max", "90", "--steps", "7", "--out", str(out)])[0] == 0
    header, rows = read_csv(out)
    assert header == ["theta_deg", "pressure_mpa"]
    assert len(rows) == 7
    p = GripperParams()
    assert float(rows[2][1]) == pytest.approx(free_pressure(p, math.radians(30)) / 1e6, rel=1e-8)


def test_payload_command(tmp_path):
    out = tmp_path / "pl.csv"
    code, _, _ = run(["payload", "--pressure-max", "2.0", "--steps", "5", "--thetas", "40,70", "--out", str(out)])
    assert code == 0
    header, rows = read_csv(out)
    assert header == ["theta_deg", "pressure_mpa", "payload_kg"]
    assert len(rows) == 10
    assert rows[-1][:2] == ["70", "2"]


def test_grasp_force_free_boundary():
    P = free_pressure(GripperParams(), math.radians(50)) / 1e6
    code, out, _ = run(["grasp-force", "--theta", "50", "--mass", "0", "--pressure", repr(P)])
    assert code == 0
    header, row = [line.split(",") for line in out.strip().split("\n")]
    assert float(row[header.index("fv_newton")]) == pytest.approx(0.0, abs=1e-6)


def test_graspable_area(tmp_path):
    out = tmp_path / "ga.csv"
    code, _, _ = run(["graspable-area", "--mass", "2", "--theta-steps", "10", "--pressure-steps", "11", "--out", str(out)])
    assert code == 0
    header, rows = read_csv(out)
    assert header == ["theta_deg", "pressure_mpa", "fv_newton", "feasible", "free_curve_pressure_mpa"]
    assert len(rows) == 110
    assert {r[3] for r in rows} <= {"0", "1"}


def test_simulate_columns(tmp_path):
    out = tmp_path / "sim.csv"
    assert run(["simulate", "--duration", "0.05", "--out", str(out)])[0] == 0
    header, rows = read_csv(out)
    assert header[:2] == ["t_s", "theta_1_deg"]
    assert header[-7:] == ["theta_bar_deg", "theta_e_deg", "pressure_mpa", "pressure_ref_mpa",
                           "mass_kg", "fx_newton", "saturated"]
    assert len(rows) == 50


def test_every_header_carries_units(tmp_path):
    unit_suffixes = ("_deg", "_mpa", "_kg", "_newton", "_s")
    flags = {"feasible", "saturated"}
    for argv in (["pressure-curve", "--steps", "3"], ["payload", "--steps", "3"],
                 ["graspable-area", "--mass", "1", "--theta-steps", "2", "--pressure-steps", "2"],
                 ["simulate", "--duration", "0.01"]):
        out = tmp_path / "x.csv"
        assert run(argv + ["--out", str(out)])[0] == 0
        header, _ = read_csv(out)
        for col in header:
            assert col in flags or col.endswith(unit_suffixes), col


def test_usage_errors_exit_2(tmp_path, capsys):
    assert run(["bogus"])[0] == 2
    assert run(["payload", "--out", "x", "--thetas", "a,b"])[0] == 2
    assert run(["payload"])[0] == 2


def test_config_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    data = json.loads(default_config_text())
    data["gripper"]["d_mm"] = 8.0
    bad.write_text(json.dumps(data))
    code, _, err = run(["pressure-curve", "--config", str(bad), "--out", str(tmp_path / "o.csv")])
    assert code == 2 and "d must exceed" in err
    code, _, err = run(["pressure-curve", "--config", str(tmp_path / "missing.json"), "--out", "o.csv"])
    assert code == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    code, _, err = run(["pressure-curve", "--config", str(broken), "--out", "o.csv"])
    assert code == 2 and "line 1" in err


def test_numerical_failure_exit_1(tmp_path):
    code, _, err = run(["pressure-curve", "--theta-max", "400", "--steps", "3", "--out", str(tmp_path / "o.csv")])
    assert code == 1
    assert "pressure-curve" in err and "CapacityError" in err


def test_custom_config(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"gripper": {"mu_sf_mpa": 2.3, "mu_sr_mpa": 2.3}}))
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    run(["pressure-curve", "--steps", "4", "--out", str(out1)])
    run(["pressure-curve", "--config", str(cfg), "--steps", "4", "--out", str(out2)])
    _, a = read_csv(out1)
    _, b = read_csv(out2)
    assert float(b[3][1]) == pytest.approx(2 * float(a[3][1]), rel=1e-8)
