"""Batch command line front end.

Subcommands ingest a JSON problem file (graphon, initial condition,
horizon, output resolution), run the closed-form solver, the agent
simulator, a convergence comparison, or the three-group classifier, and
emit CSV/JSON artifacts for offline plotting.  Output is deterministic:
identical inputs give byte-identical files (sorted JSON keys, repr
floats, LF line endings, no timestamps).

Exit codes: 0 ok, 2 input or usage error, 3 numeric failure (blowup or
non-finite solver output), 4 configuration conflict (non-conformable
agent count).

Problem JSON shape:

    {
      "graphon": {"breakpoints": [0, 0.5, 1],
                  "blocks": [[0, 1], [1, 0]],
                  "bound": 1.0},          or a path to such a JSON file
      "initial": "linear",                or "constant:c", "indicator:j",
                                          or [g1, ..., gN] per-group values,
                                          or {"groups": [...]},
                                          or {"csv": "u0.csv"} with header x,u
                                          (right cell edges and values),
                                          or {"grid": [...], "values": [...]}
      "horizon": 1.0,                     default 1.0, used when no time
                                          flag is given
      "resolution": 512                   output cells, default 512
    }

File references are resolved relative to the problem file's directory.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import Partition, PiecewiseFn, StepGraphon, sample_network
from .meanfield import energy, solve_at
from .sim import (
    BlowupError,
    ConformabilityError,
    SimConfig,
    convergence_study,
    discretize_initial,
    simulate,
)
from .threegroup import classify


@dataclass(frozen=True)
class ProblemSpec:
    """Resolved problem definition: everything loaded, no references left."""

    graphon: StepGraphon
    initial: PiecewiseFn
    horizon: float
    resolution: int


def graphon_to_json(g: StepGraphon) -> dict:
    return {
        "breakpoints": [float(x) for x in g.partition.breakpoints],
        "blocks": [[float(x) for x in row] for row in g.block_values],
        "bound": float(g.bound),
    }


def graphon_from_json(obj) -> StepGraphon:
    if not isinstance(obj, dict):
        raise ValueError("graphon JSON must be an object")
    if "breakpoints" not in obj or "blocks" not in obj:
        raise ValueError("graphon JSON needs 'breakpoints' and 'blocks'")
    return StepGraphon(Partition(obj["breakpoints"]), obj["blocks"],
                       obj.get("bound"))


def problem_to_json(prob: ProblemSpec) -> dict:
    """Normalized problem JSON with the initial condition inlined."""
    return {
        "graphon": graphon_to_json(prob.graphon),
        "initial": {"grid": [float(x) for x in prob.initial.grid],
                    "values": [float(x) for x in prob.initial.values]},
        "horizon": float(prob.horizon),
        "resolution": int(prob.resolution),
    }


def _initial_from_csv(path: Path) -> PiecewiseFn:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or [c.strip().lower() for c in rows[0]] != ["x", "u"]:
        raise ValueError(f"{path}: initial CSV needs an 'x,u' header row")
    data = [(float(r[0]), float(r[1])) for r in rows[1:] if r]
    if not data:
        raise ValueError(f"{path}: initial CSV has no data rows")
    grid, values = zip(*data)
    return PiecewiseFn(np.array(grid), np.array(values))


def _initial_from_spec(obj, p: Partition, resolution: int,
                       base: Path) -> PiecewiseFn:
    if isinstance(obj, str):
        if obj == "linear":
            r = resolution
            return PiecewiseFn(np.arange(1, r + 1) / r, (np.arange(r) + 0.5) / r)
        if obj.startswith("constant:"):
            return PiecewiseFn.constant(float(obj.split(":", 1)[1]))
        if obj.startswith("indicator:"):
            j = int(obj.split(":", 1)[1])
            if not 1 <= j <= p.n_groups:
                raise ValueError(f"indicator group {j} out of range 1..{p.n_groups}")
            values = np.zeros(p.n_groups)
            values[j - 1] = 1.0
            return PiecewiseFn(p.breakpoints[1:], values)
        raise ValueError(f"unknown initial preset {obj!r}; expected 'linear', "
                         "'constant:c', or 'indicator:j'")
    if isinstance(obj, list):
        obj = {"groups": obj}
    if isinstance(obj, dict):
        if "groups" in obj:
            groups = np.asarray(obj["groups"], dtype=float)
            if groups.shape != (p.n_groups,):
                raise ValueError(f"'groups' needs {p.n_groups} values, "
                                 f"got {groups.size}")
            return PiecewiseFn(p.breakpoints[1:], groups)
        if "csv" in obj:
            return _initial_from_csv(base / obj["csv"])
        if "grid" in obj and "values" in obj:
            return PiecewiseFn(np.asarray(obj["grid"], dtype=float),
                               np.asarray(obj["values"], dtype=float))
    raise ValueError("unrecognized 'initial' entry in problem JSON")


def load_problem(path) -> ProblemSpec:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict):
        raise ValueError(f"{path}: problem JSON must be an object")
    if "graphon" not in obj:
        raise ValueError(f"{path}: problem JSON needs a 'graphon' entry")

    graphon = obj["graphon"]
    if isinstance(graphon, str):
        with open(path.parent / graphon, encoding="utf-8") as fh:
            graphon = json.load(fh)
    g = graphon_from_json(graphon)

    horizon = float(obj.get("horizon", 1.0))
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    resolution = int(obj.get("resolution", 512))
    if resolution < 1:
        raise ValueError("resolution must be at least 1")

    initial = _initial_from_spec(obj.get("initial", "constant:0"), g.partition,
                                 resolution, path.parent)
    if not initial.covers_unit:
        raise ValueError("initial condition must cover [0, 1]")
    return ProblemSpec(g, initial, horizon, resolution)


def _write_json(path: Path, obj) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2)
    path.write_text(text + "\n", encoding="utf-8")


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def cmd_solve(args) -> int:
    prob = load_problem(args.spec)
    times = args.times if args.times is not None else [prob.horizon]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    r = prob.resolution
    xs = (np.arange(r) + 0.5) / r
    state_files = []
    summary = []
    for idx, t in enumerate(times, start=1):
        state = solve_at(prob.graphon, prob.initial, t)
        us = state.solution.evaluate(xs)
        if not (np.all(np.isfinite(us)) and np.all(np.isfinite(state.means))):
            print(f"error: solution is non-finite at t = {t}", file=sys.stderr)
            return 3
        name = f"u_{idx:04d}.csv"
        _write_csv(out / name, ["x", "u"], zip(xs.tolist(), us.tolist()))
        state_files.append(name)
        summary.append({
            "t": float(t),
            "means": [float(x) for x in state.means],
            "mu": [float(x) for x in state.mu],
            "energy": energy(state.solution),
        })

    _write_json(out / "summary.json", summary)
    _write_json(out / "manifest.json", {
        "command": "solve",
        "problem": problem_to_json(prob),
        "times": [float(t) for t in times],
        "files": {"states": state_files, "summary": "summary.json"},
    })
    return 0


def cmd_simulate(args) -> int:
    prob = load_problem(args.spec)
    if args.agents < 1:
        raise ValueError("agents must be at least 1")
    t_end = args.t_end if args.t_end is not None else prob.horizon
    cfg = SimConfig(dt=args.dt, t_end=t_end, record_every=args.record_every)

    net = sample_network(prob.graphon, args.agents)
    u0 = discretize_initial(prob.initial, args.agents)
    traj = simulate(net, u0, cfg)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = ((float(t), i + 1, float(traj.states[k, i]))
            for k, t in enumerate(traj.times)
            for i in range(args.agents))
    _write_csv(out / "trajectory.csv", ["t", "i", "u"], rows)
    _write_csv(out / "final_state.csv", ["i", "u"],
               ((i + 1, float(v)) for i, v in enumerate(traj.final_state)))
    _write_json(out / "manifest.json", {
        "command": "simulate",
        "problem": problem_to_json(prob),
        "agents": int(args.agents),
        "dt": float(cfg.dt),
        "t_end": float(cfg.t_end),
        "record_every": int(cfg.record_every),
        "files": {"trajectory": "trajectory.csv",
                  "final_state": "final_state.csv"},
    })
    return 0


def cmd_compare(args) -> int:
    prob = load_problem(args.spec)
    t = args.t if args.t is not None else prob.horizon
    results = convergence_study(prob.graphon, prob.initial, args.agents, t)

    _write_csv(Path(args.out), ["M", "l2_error"],
               ((m, float(e)) for m, e in results))
    errors = [e for _, e in results]
    nonincreasing = all(b <= a for a, b in zip(errors, errors[1:]))
    print(f"l2_error non-increasing: {'yes' if nonincreasing else 'no'}")
    return 0


def cmd_classify(args) -> int:
    if len(args.means) != 3:
        raise ValueError("--means needs exactly three comma-separated values")
    report = classify(args.a12, args.a13, args.a23, args.means)
    text = json.dumps(report.to_json(), sort_keys=True, indent=2)
    print(text)
    if args.out is not None:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    return 0


def _float_list(text: str) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _int_list(text: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphondyn",
        description="Opinion dynamics on step graphons: closed-form solver, "
                    "agent simulator, convergence comparison, three-group "
                    "classifier.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="closed-form solution at given times")
    p.add_argument("--spec", required=True, help="problem JSON file")
    p.add_argument("--times", type=_float_list, default=None,
                   help="comma-separated times (default: the problem horizon)")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("simulate", help="fixed-step agent simulation")
    p.add_argument("--spec", required=True, help="problem JSON file")
    p.add_argument("--agents", type=int, required=True, help="number of agents M")
    p.add_argument("--dt", type=float, default=1e-3, help="step size (default 1e-3)")
    p.add_argument("--t-end", type=float, default=None,
                   help="end time (default: the problem horizon)")
    p.add_argument("--record-every", type=int, default=None,
                   help="record every k-th step (default: at most 1001 frames)")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="simulation error against the closed form")
    p.add_argument("--spec", required=True, help="problem JSON file")
    p.add_argument("--agents", type=_int_list, required=True,
                   help="comma-separated agent counts, each conformable")
    p.add_argument("--t", type=float, default=None,
                   help="comparison time (default: the problem horizon)")
    p.add_argument("--out", required=True, help="output CSV file")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("classify", help="three-group scenario report")
    p.add_argument("--a12", type=float, required=True)
    p.add_argument("--a13", type=float, required=True)
    p.add_argument("--a23", type=float, required=True)
    p.add_argument("--means", type=_float_list, required=True,
                   help="comma-separated initial group means m1,m2,m3")
    p.add_argument("--out", default=None, help="optional output JSON file")
    p.set_defaults(func=cmd_classify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2

    try:
        return int(args.func(args))
    except BlowupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ConformabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())
