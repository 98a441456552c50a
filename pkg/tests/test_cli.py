"""Command line front end: artifacts, determinism, exit codes."""

import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from graphondyn import PiecewiseFn, StepGraphon, classify, three_group_graphon
from graphondyn.cli import graphon_from_json, graphon_to_json, load_problem, main

HALVES = {"breakpoints": [0.0, 0.5, 1.0],
          "blocks": [[0.0, 1.0], [1.0, 0.0]],
          "bound": 1.0}


def write_problem(path, **overrides):
    prob = {"graphon": HALVES, "initial": {"groups": [1.0, -1.0]},
            "horizon": 1.0, "resolution": 16}
    prob.update(overrides)
    path.write_text(json.dumps(prob), encoding="utf-8")
    return path


def read_csv(path):
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], [[float(x) for x in row] for row in rows[1:]]


def tree_bytes(root):
    return {p.relative_to(root).as_posix(): p.read_bytes()
            for p in sorted(root.rglob("*")) if p.is_file()}


# ----------------------------------------------------------------- solve

def test_solve_writes_expected_artifacts(tmp_path):
    spec = write_problem(tmp_path / "prob.json")
    out = tmp_path / "run"
    assert main(["solve", "--spec", str(spec), "--times", "0.5,1",
                 "--out", str(out)]) == 0
    header, rows = read_csv(out / "u_0002.csv")
    assert header == ["x", "u"]
    assert len(rows) == 16
    expected = np.exp(-1.0)
    for x, u in rows:
        assert abs(abs(u) - expected) < 1e-9
    summary = json.loads((out / "summary.json").read_text())
    assert [s["t"] for s in summary] == [0.5, 1.0]
    assert summary[1]["mu"] == [0.5, 0.5]
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["files"]["states"] == ["u_0001.csv", "u_0002.csv"]


def test_solve_constant_initial_rows_all_equal(tmp_path):
    spec = write_problem(tmp_path / "prob.json", initial="constant:0.7")
    out = tmp_path / "run"
    assert main(["solve", "--spec", str(spec), "--out", str(out)]) == 0
    _, rows = read_csv(out / "u_0001.csv")
    assert all(abs(u - 0.7) < 1e-12 for _, u in rows)


def test_solve_zero_graphon_is_identity(tmp_path):
    zero = {"graphon": {"breakpoints": [0.0, 0.5, 1.0],
                        "blocks": [[0.0, 0.0], [0.0, 0.0]], "bound": 0.0},
            "initial": {"groups": [2.0, -1.0]}}
    spec = tmp_path / "prob.json"
    spec.write_text(json.dumps(zero), encoding="utf-8")
    out = tmp_path / "run"
    assert main(["solve", "--spec", str(spec), "--times", "5", "--out", str(out)]) == 0
    _, rows = read_csv(out / "u_0001.csv")
    for x, u in rows:
        assert abs(u - (2.0 if x <= 0.5 else -1.0)) < 1e-12


def test_solve_determinism_byte_identical(tmp_path):
    spec = write_problem(tmp_path / "prob.json", initial="linear")
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert main(["solve", "--spec", str(spec), "--times", "0.25,1,2",
                     "--out", str(out)]) == 0
    assert tree_bytes(a) == tree_bytes(b)


def test_solve_missing_spec_exits_2(tmp_path, capsys):
    assert main(["solve", "--spec", str(tmp_path / "nope.json"),
                 "--out", str(tmp_path / "x")]) == 2
    assert "error" in capsys.readouterr().err


def test_solve_malformed_spec_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert main(["solve", "--spec", str(bad), "--out", str(tmp_path / "x")]) == 2
    empty = tmp_path / "empty.json"
    empty.write_text("{}", encoding="utf-8")
    assert main(["solve", "--spec", str(empty), "--out", str(tmp_path / "x")]) == 2


# --------------------------------------------------------------- simulate

def test_simulate_two_agent_final_state(tmp_path):
    spec = write_problem(tmp_path / "prob.json")
    out = tmp_path / "run"
    assert main(["simulate", "--spec", str(spec), "--agents", "2",
                 "--dt", "0.001", "--t-end", "1", "--out", str(out)]) == 0
    _, rows = read_csv(out / "final_state.csv")
    assert [int(i) for i, _ in rows] == [1, 2]
    assert abs(rows[0][1] - np.exp(-1.0)) < 1e-8
    assert abs(rows[1][1] + np.exp(-1.0)) < 1e-8


def test_simulate_record_every_frame_count(tmp_path):
    spec = write_problem(tmp_path / "prob.json")
    out = tmp_path / "run"
    assert main(["simulate", "--spec", str(spec), "--agents", "2",
                 "--dt", "0.001", "--t-end", "1", "--record-every", "7",
                 "--out", str(out)]) == 0
    header, rows = read_csv(out / "trajectory.csv")
    assert header == ["t", "i", "u"]
    frames = sorted({t for t, _, _ in rows})
    assert len(frames) == 1000 // 7 + 1


def test_simulate_dt_beyond_horizon_exits_2(tmp_path, capsys):
    spec = write_problem(tmp_path / "prob.json")
    assert main(["simulate", "--spec", str(spec), "--agents", "2",
                 "--dt", "2", "--t-end", "1", "--out", str(tmp_path / "x")]) == 2
    capsys.readouterr()


def test_simulate_blowup_exits_3(tmp_path, capsys):
    spec = tmp_path / "prob.json"
    spec.write_text(json.dumps({
        "graphon": {"breakpoints": [0.0, 0.5, 1.0],
                    "blocks": [[0.0, -8.0], [-8.0, 0.0]], "bound": 8.0},
        "initial": {"groups": [1.0, -1.0]}}), encoding="utf-8")
    with pytest.warns(UserWarning):
        rc = main(["simulate", "--spec", str(spec), "--agents", "2",
                   "--dt", "0.5", "--t-end", "300", "--out", str(tmp_path / "x")])
    assert rc == 3
    assert "non-finite" in capsys.readouterr().err


def test_simulate_determinism(tmp_path):
    spec = write_problem(tmp_path / "prob.json")
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert main(["simulate", "--spec", str(spec), "--agents", "6",
                     "--dt", "0.01", "--t-end", "1", "--out", str(out)]) == 0
    assert tree_bytes(a) == tree_bytes(b)


# ---------------------------------------------------------------- compare

def test_compare_group_constant_errors_tiny(tmp_path, capsys):
    spec = write_problem(tmp_path / "prob.json")
    out = tmp_path / "cmp.csv"
    assert main(["compare", "--spec", str(spec), "--agents", "2,4,8",
                 "--t", "1", "--out", str(out)]) == 0
    assert "non-increasing" in capsys.readouterr().out
    header, rows = read_csv(out)
    assert header == ["M", "l2_error"]
    assert [int(m) for m, _ in rows] == [2, 4, 8]
    assert all(err <= 1e-6 for _, err in rows)


def test_compare_nonconformable_exits_4(tmp_path, capsys):
    spec = write_problem(tmp_path / "prob.json")
    assert main(["compare", "--spec", str(spec), "--agents", "3",
                 "--t", "1", "--out", str(tmp_path / "cmp.csv")]) == 4
    capsys.readouterr()


# --------------------------------------------------------------- classify

def test_classify_prints_and_writes_identical_json(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["classify", "--a12", "1", "--a13", "-0.5", "--a23", "1",
                 "--means", "1,0,-1", "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert printed == out.read_text(encoding="utf-8")
    payload = json.loads(printed)
    assert payload["barycenter_case"] == "three_limits"
    assert payload["threshold_a13"] == -0.5
    assert payload["lambda"] == [0.0, 3.0, 0.0]


def test_classify_bad_means_exit_2(capsys):
    assert main(["classify", "--a12", "1", "--a13", "0", "--a23", "1",
                 "--means", "1,zap,3"]) == 2
    capsys.readouterr()
    assert main(["classify", "--a12", "1", "--a13", "0", "--a23", "1",
                 "--means", "1,2"]) == 2
    capsys.readouterr()


def test_classify_solve_cross_check(tmp_path):
    # the closed-form solver driven to t = 50 must land on the classifier's
    # limit vector for the frozen-mode triple
    g = three_group_graphon(1.0, -0.5, 1.0)
    means0 = [0.9, 0.1, -0.7]
    spec = tmp_path / "prob.json"
    spec.write_text(json.dumps({"graphon": graphon_to_json(g),
                                "initial": {"groups": means0}}), encoding="utf-8")
    out = tmp_path / "run"
    assert main(["solve", "--spec", str(spec), "--times", "50",
                 "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    u_inf = classify(1.0, -0.5, 1.0, means0).u_infinity
    assert np.max(np.abs(np.array(summary[0]["means"]) - u_inf)) < 1e-5


# ------------------------------------------------------ formats and parsing

def test_graphon_json_round_trip():
    g = three_group_graphon(1.0, -0.5, 1.0)
    back = graphon_from_json(graphon_to_json(g))
    assert np.array_equal(back.partition.breakpoints, g.partition.breakpoints)
    assert np.array_equal(back.block_values, g.block_values)
    assert back.bound == g.bound


def test_manifest_problem_json_round_trips(tmp_path):
    spec = write_problem(tmp_path / "prob.json", initial="linear")
    out = tmp_path / "run"
    assert main(["solve", "--spec", str(spec), "--out", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    redumped = tmp_path / "再prob.json"  # exercise non-ascii paths too
    redumped.write_text(json.dumps(manifest["problem"]), encoding="utf-8")
    prob = load_problem(redumped)
    first = load_problem(spec)
    assert np.array_equal(prob.initial.grid, first.initial.grid)
    assert np.array_equal(prob.initial.values, first.initial.values)
    assert np.array_equal(prob.graphon.block_values, first.graphon.block_values)


def test_graphon_file_reference_resolved_relative(tmp_path):
    (tmp_path / "g.json").write_text(json.dumps(HALVES), encoding="utf-8")
    spec = tmp_path / "prob.json"
    spec.write_text(json.dumps({"graphon": "g.json",
                                "initial": {"groups": [1.0, -1.0]}}),
                    encoding="utf-8")
    prob = load_problem(spec)
    assert prob.graphon.n_groups == 2


def test_initial_presets(tmp_path):
    spec = write_problem(tmp_path / "p1.json", initial="linear", resolution=64)
    prob = load_problem(spec)
    assert abs(prob.initial.integral() - 0.5) < 1e-12
    spec = write_problem(tmp_path / "p2.json", initial="indicator:2")
    prob = load_problem(spec)
    assert np.array_equal(prob.initial.values, [0.0, 1.0])
    spec = write_problem(tmp_path / "p3.json", initial="constant:-1.5")
    assert load_problem(spec).initial.values[0] == -1.5
    spec = write_problem(tmp_path / "p4.json", initial="no-such-preset")
    with pytest.raises(ValueError):
        load_problem(spec)
    spec = write_problem(tmp_path / "p5.json", initial="indicator:9")
    with pytest.raises(ValueError):
        load_problem(spec)


def test_initial_bare_list_and_csv(tmp_path):
    spec = write_problem(tmp_path / "p1.json", initial=[2.0, 3.0])
    assert np.array_equal(load_problem(spec).initial.values, [2.0, 3.0])
    (tmp_path / "u0.csv").write_text("x,u\n0.5,1.0\n1.0,-1.0\n", encoding="utf-8")
    spec = write_problem(tmp_path / "p2.json", initial={"csv": "u0.csv"})
    prob = load_problem(spec)
    assert np.array_equal(prob.initial.grid, [0.5, 1.0])
    assert np.array_equal(prob.initial.values, [1.0, -1.0])


def test_csv_files_use_lf_only(tmp_path):
    spec = write_problem(tmp_path / "prob.json")
    out = tmp_path / "run"
    assert main(["solve", "--spec", str(spec), "--out", str(out)]) == 0
    raw = (out / "u_0001.csv").read_bytes()
    assert b"\r" not in raw
    assert raw.startswith(b"x,u\n")


def test_module_invocation_round_trip(tmp_path):
    # the installed entry point runs the same main; exercise one subprocess
    proc = subprocess.run(
        [sys.executable, "-m", "graphondyn", "classify", "--a12", "1",
         "--a13", "0", "--a23", "1", "--means", "0.5,0,-0.5"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["barycenter_case"] == "collapse"
