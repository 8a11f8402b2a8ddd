"""Named experiment runners: disk-environment studies and RR validation.

Each experiment writes CSV tables plus an SVG figure into its output
directory and records a manifest.json so plots can be re-emitted later.

Scenes: the planner-context studies (multistart, screening_sweep,
visibility_sweep, nwalks_sweep, parallel_sweep, rr_*) use the unit point
source at the goal with absorbing boundary.  The dimensionality study
measures estimator convergence against a high-budget self-oracle using
unit boundary data and no source: at the study point, source pickups are
rare events (about 5e-4 of walks in 2-d, 2e-5 in 5-d), so small-budget
cells of a source-driven study would mostly hold empty estimates rather
than convergence information, while the boundary-driven potential
exercises the same walk machinery with every walk contributing.

Angle errors compare estimates against the oracle direction.  A
zero-magnitude estimate carries no direction and is recorded as pi/2,
the mean angle between a uniformly random direction and any fixed one.

Result CSVs are pure functions of the spec (all seeds explicit).
Wall-clock readings live in *_timing.csv files, or in the explicit
wall_time column of nwalks_sweep; everything else is byte-reproducible.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
from dataclasses import dataclass

import numpy as np

from .. import __version__, rng
from .._engine import warmup
from ..geometry import make_disk_environment
from ..planner import (PathResult, PlanConfig, discrete_frechet,
                       integrate_path, read_path_csv, write_path_csv)
from ..robot import collision_curve, ik_cspace_field, lipschitz_cspace_field, rr_arm
from ..solver import BoundarySpec, SourceSpec, WalkConfig, solve_gradient
from . import svg
from .config import ConfigError, as_float, as_floats, as_int, as_ints, as_str

EXPERIMENT_NAMES = ("multistart", "screening_sweep", "visibility_sweep",
                    "nwalks_sweep", "parallel_sweep", "dim_sweep",
                    "rr_ik", "rr_lipschitz")

_DEFAULTS = {
    "multistart": {
        "k_r": 0.2, "c": 1.0, "n_walks": 100_000, "epsilon": 0.01,
        "s_ub": 0.25, "max_iters": 1000, "n_starts": 8, "ring_radius": 8.0,
        "seeds": [0],
    },
    "screening_sweep": {
        "k_r": 0.4, "c_grid": [10.0, 1.0, 0.1], "n_walks": 100_000,
        "epsilon": 0.01, "s_ub": 0.25, "max_iters": 1000,
        "start": [-8.0, 0.0], "seeds": [0],
    },
    "visibility_sweep": {
        "k_r_grid": [0.3, 0.45, 0.6], "c": 1.0, "n_walks": 100_000,
        "epsilon": 0.01, "s_ub": 0.25, "max_iters": 1000,
        "start": [-8.0, 0.0], "seeds": [0],
    },
    "nwalks_sweep": {
        "k_r": 0.4, "c": 1.0, "n_grid": [1_000, 10_000, 100_000, 1_000_000],
        "epsilon": 0.01, "point": [-8.0, 0.0],
        "oracle_walks": 10_000_000, "oracle_seed": 999,
        "seeds": list(range(8)),
    },
    "parallel_sweep": {
        "k_r": 0.3, "c": 1.0, "n_grid": [100_000, 1_000_000],
        "workers_grid": [1, 2, 4, 8], "epsilon": 0.01,
        "point": [-8.0, 0.0], "seeds": list(range(8)),
    },
    "dim_sweep": {
        "k_r": 0.3, "c": 1.0, "dims": [2, 3, 4, 5],
        "n_grid": [1_000, 10_000, 100_000, 1_000_000], "epsilon": 0.01,
        "point": [-8.0, 0.0], "oracle_walks": 10_000_000, "oracle_seed": 999,
        "seeds": list(range(8)),
    },
    "rr_ik": {
        "obstacle": [0.0, 1.3], "n_col": 200, "c_grid": [5.0, 0.0],
        "n_walks": 100_000, "epsilon": 0.02, "s_ub": 0.1, "max_iters": 1000,
        "q_start": [0.785, 0.800], "q_goal": [2.042, 0.200], "seeds": [0],
    },
    "rr_lipschitz": {
        "obstacle": [0.0, 1.3], "n_col": 200, "c_grid": [0.0],
        "n_walks": 100_000, "epsilon": 0.02, "s_ub": 0.1, "max_iters": 1000,
        "q_start": [0.785, 0.800], "q_goal": [2.042, 0.200], "seeds": [0],
    },
}

_LIST_KEYS = {"c_grid", "k_r_grid", "n_grid", "workers_grid", "dims", "seeds",
              "start", "point", "obstacle", "q_start", "q_goal"}
_INT_LIST_KEYS = {"n_grid", "workers_grid", "dims", "seeds"}
_INT_KEYS = {"n_walks", "max_iters", "n_starts", "n_col",
             "oracle_walks", "oracle_seed"}


@dataclass(frozen=True)
class ExperimentSpec:
    """A named experiment with fully resolved parameters and seeds."""

    name: str
    params: dict
    seeds: tuple
    out_dir: str

    def __post_init__(self):
        if self.name not in EXPERIMENT_NAMES:
            raise ConfigError(f"unknown experiment {self.name!r}; "
                              f"expected one of {', '.join(EXPERIMENT_NAMES)}")
        if not self.seeds:
            raise ConfigError("seeds must be non-empty")
        for key, val in self.params.items():
            if key.endswith("_grid") or key == "dims":
                if len(val) == 0:
                    raise ConfigError(f"empty grid {key!r}")


def spec_from_config(cfg: dict, out_dir=None, seed=None) -> ExperimentSpec:
    """Resolve a parsed config against experiment defaults.

    out_dir/seed override the file's `out`/seed list; a seed override S
    replaces seed i with derive_seed(S, i), keeping the list length.
    """
    name = as_str(cfg, "name")
    if name not in _DEFAULTS:
        raise ConfigError(f"unknown experiment {name!r}; "
                          f"expected one of {', '.join(EXPERIMENT_NAMES)}")
    params = {}
    for key, default in _DEFAULTS[name].items():
        if key == "seeds":
            continue
        if key in _INT_LIST_KEYS:
            params[key] = as_ints(cfg, key, " ".join(str(v) for v in default))
        elif key in _LIST_KEYS:
            params[key] = [float(v) for v in
                           as_floats(cfg, key, " ".join(str(v) for v in default))]
        elif key in _INT_KEYS:
            params[key] = as_int(cfg, key, default)
        else:
            params[key] = as_float(cfg, key, default)
    known = set(_DEFAULTS[name]) | {"name", "out", "seeds"}
    for key in cfg:
        if key not in known:
            raise ConfigError(f"unknown key {key!r} for experiment {name!r}")
    seeds = as_ints(cfg, "seeds", " ".join(str(s) for s in _DEFAULTS[name]["seeds"]))
    if seed is not None:
        seeds = [rng.derive_seed(seed, i) for i in range(len(seeds))]
    out = out_dir if out_dir is not None else as_str(cfg, "out", f"results/{name}")
    return ExperimentSpec(name=name, params=params, seeds=tuple(seeds), out_dir=out)


@dataclass(frozen=True)
class RunRecord:
    """Locations and spec echo of one experiment run."""

    name: str
    spec: dict
    files: dict  # role -> filename relative to out_dir
    out_dir: str
    version: str

    def path(self, role: str) -> str:
        return os.path.join(self.out_dir, self.files[role])


def fit_loglog_slope(xs, ys) -> float:
    """Least-squares slope of log y against log x."""
    x = np.asarray(xs, dtype=float).reshape(-1)
    y = np.asarray(ys, dtype=float).reshape(-1)
    if x.size != y.size:
        raise ValueError("xs and ys differ in length")
    if x.size < 3:
        raise ValueError("need at least 3 points for a slope fit")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("log-log fit requires positive values")
    lx = np.log(x)
    A = np.vstack([lx, np.ones_like(lx)]).T
    return float(np.linalg.lstsq(A, np.log(y), rcond=None)[0][0])


def _angle_to(g_hat, g_ref) -> float:
    """Angle between estimate and reference; pi/2 for a zero estimate."""
    nh = float(np.linalg.norm(g_hat))
    nr = float(np.linalg.norm(g_ref))
    if nr == 0.0:
        raise ValueError("reference gradient has zero norm")
    if nh == 0.0:
        return math.pi / 2
    return float(np.arccos(np.clip(np.dot(g_hat, g_ref) / (nh * nr), -1.0, 1.0)))


def _fval(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    return f"{float(v):.17g}"


def _write_csv(fname, comment: str, colnames, rows) -> None:
    with open(fname, "w", newline="") as fh:
        fh.write(f"# {comment}\n")
        fh.write(",".join(colnames) + "\n")
        for row in rows:
            fh.write(",".join(_fval(v) for v in row) + "\n")


def _read_csv(fname):
    """Read one of our CSVs: (comment, colnames, float array)."""
    with open(fname) as fh:
        comment = fh.readline().strip().lstrip("# ")
        names = fh.readline().strip().split(",")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    return comment, names, data


def _echo(spec: ExperimentSpec) -> str:
    parts = [f"{k}={v}" for k, v in sorted(spec.params.items())]
    return f"{spec.name} seeds={list(spec.seeds)} " + " ".join(parts)


def _finish(spec: ExperimentSpec, files: dict) -> RunRecord:
    record = RunRecord(name=spec.name,
                       spec={"name": spec.name, "params": spec.params,
                             "seeds": list(spec.seeds)},
                       files=files, out_dir=spec.out_dir, version=__version__)
    manifest = {"name": record.name, "spec": record.spec,
                "files": record.files, "version": record.version}
    with open(os.path.join(spec.out_dir, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return record


def load_record(path: str) -> RunRecord:
    """Load a RunRecord from a manifest.json path or its directory."""
    if os.path.isdir(path):
        path = os.path.join(path, "manifest.json")
    with open(path) as fh:
        m = json.load(fh)
    return RunRecord(name=m["name"], spec=m["spec"], files=m["files"],
                     out_dir=os.path.dirname(os.path.abspath(path)),
                     version=m["version"])


def _disk_walk(params, n_walks, seed) -> WalkConfig:
    return WalkConfig(epsilon=params["epsilon"], n_walks=n_walks,
                      screening=params["c"], seed=seed)


def _plan_disk(params, field, goal, start, walk, workers) -> PathResult:
    cfg = PlanConfig(s_ub=params["s_ub"], max_iters=params["max_iters"],
                     walk=walk, goal=goal)
    return integrate_path(field, cfg, start, workers=workers)


def _run_multistart(spec, workers):
    p = spec.params
    field = make_disk_environment(p["k_r"])
    goal = np.array([8.0, 0.0])
    n_starts = p["n_starts"]
    angles = [math.pi / n_starts + 2 * math.pi * k / n_starts
              for k in range(n_starts)]
    files = {}
    rows = []
    for si, seed in enumerate(spec.seeds):
        for k, ang in enumerate(angles):
            start = p["ring_radius"] * np.array([math.cos(ang), math.sin(ang)])
            walk = _disk_walk(p, p["n_walks"], rng.derive_seed(seed, k))
            path = _plan_disk(p, field, goal, start, walk, workers)
            rows.append([k, ang, seed, path.status, path.length,
                         path.points.shape[0] - 1])
            if si == 0:
                role = f"path_{k:02d}"
                files[role] = f"{role}.csv"
                write_path_csv(path, field, os.path.join(spec.out_dir, files[role]))
    files["summary"] = "multistart.csv"
    _write_csv(os.path.join(spec.out_dir, files["summary"]),
               _echo(spec) + " columns: start index, ring angle (rad), seed, "
               "planner status, path length, step count",
               ["start_index", "angle", "seed", "status", "length", "n_steps"],
               rows)
    files["plot"] = "multistart.svg"
    record = _finish(spec, files)
    emit_plot(record, "path_overlay")
    return record


def _run_screening_sweep(spec, workers):
    p = spec.params
    field = make_disk_environment(p["k_r"])
    goal = np.array([8.0, 0.0])
    start = np.asarray(p["start"], dtype=float)
    files = {}
    rows = []
    for si, seed in enumerate(spec.seeds):
        for ci, c in enumerate(p["c_grid"]):
            params_c = dict(p, c=c)
            walk = _disk_walk(params_c, p["n_walks"], rng.derive_seed(seed, ci))
            path = _plan_disk(params_c, field, goal, start, walk, workers)
            rows.append([c, seed, path.status, path.length,
                         path.points.shape[0] - 1])
            if si == 0:
                role = f"path_c{c:g}"
                files[role] = f"{role}.csv"
                write_path_csv(path, field, os.path.join(spec.out_dir, files[role]))
    files["summary"] = "screening_sweep.csv"
    _write_csv(os.path.join(spec.out_dir, files["summary"]),
               _echo(spec) + " columns: screening coefficient, seed, planner "
               "status, path length, step count",
               ["c", "seed", "status", "length", "n_steps"], rows)
    files["plot"] = "screening_sweep.svg"
    record = _finish(spec, files)
    emit_plot(record, "path_overlay")
    return record


def _run_visibility_sweep(spec, workers):
    p = spec.params
    goal = np.array([8.0, 0.0])
    start = np.asarray(p["start"], dtype=float)
    files = {}
    rows = []
    for si, seed in enumerate(spec.seeds):
        for ki, k_r in enumerate(p["k_r_grid"]):
            field = make_disk_environment(k_r)
            walk = _disk_walk(p, p["n_walks"], rng.derive_seed(seed, ki))
            path = _plan_disk(p, field, goal, start, walk, workers)
            for step, est in enumerate(path.step_gradients):
                rows.append([k_r, seed, step, float(np.sum(est.sample_variance)),
                             path.length, path.status])
            if si == 0:
                role = f"path_kr{k_r:g}"
                files[role] = f"{role}.csv"
                write_path_csv(path, field, os.path.join(spec.out_dir, files[role]))
    files["summary"] = "visibility_sweep.csv"
    _write_csv(os.path.join(spec.out_dir, files["summary"]),
               _echo(spec) + " columns: radius scale, seed, step index, total "
               "per-walk variance of the step's gradient estimate, path "
               "length, status",
               ["k_r", "seed", "step_index", "var_total", "length", "status"],
               rows)
    files["plot"] = "visibility_sweep.svg"
    record = _finish(spec, files)
    emit_plot(record, "path_overlay")
    return record


def _run_nwalks_sweep(spec, workers):
    p = spec.params
    field = make_disk_environment(p["k_r"])
    goal = np.array([8.0, 0.0])
    point = np.asarray(p["point"], dtype=float)
    bc = BoundarySpec(0.0)
    src = SourceSpec.dirac(goal)
    warmup(point.size)
    oracle = solve_gradient(field, bc, src,
                            _disk_walk(p, p["oracle_walks"], p["oracle_seed"]),
                            point, workers=workers)
    rows = []
    for n in p["n_grid"]:
        for seed in spec.seeds:
            est = solve_gradient(field, bc, src, _disk_walk(p, n, seed),
                                 point, workers=workers)
            rows.append([n, seed, _angle_to(est.mean, oracle.mean),
                         est.wall_time])
    files = {"summary": "nwalks_sweep.csv"}
    _write_csv(os.path.join(spec.out_dir, files["summary"]),
               _echo(spec) + " columns: walks per estimate, seed, angle to the "
               f"{p['oracle_walks']}-walk oracle direction (rad; pi/2 for a "
               "zero estimate), solve wall time (s)",
               ["n_walks", "seed", "angle_error", "wall_time"], rows)
    files["plot"] = "nwalks_sweep.svg"
    record = _finish(spec, files)
    emit_plot(record, "loglog")
    return record


def _run_parallel_sweep(spec, workers):
    p = spec.params
    field = make_disk_environment(p["k_r"])
    goal = np.array([8.0, 0.0])
    point = np.asarray(p["point"], dtype=float)
    bc = BoundarySpec(0.0)
    src = SourceSpec.dirac(goal)
    warmup(point.size)
    rows = []
    for w in p["workers_grid"]:
        for n in p["n_grid"]:
            for rep, seed in enumerate(spec.seeds):
                est = solve_gradient(field, bc, src, _disk_walk(p, n, seed),
                                     point, workers=int(w))
                rows.append([int(w), n, rep, est.wall_time])
    files = {"timing": "parallel_sweep_timing.csv"}
    _write_csv(os.path.join(spec.out_dir, files["timing"]),
               _echo(spec) + " columns: worker count, walks per estimate, "
               "repetition index, solve wall time (s)",
               ["workers", "n_walks", "rep", "wall_time"], rows)
    files["plot"] = "parallel_sweep.svg"
    record = _finish(spec, files)
    emit_plot(record, "box_timing")
    return record


def _run_dim_sweep(spec, workers):
    p = spec.params
    bc = BoundarySpec(1.0)
    src = SourceSpec.none()
    rows = []
    trows = []
    for dim in p["dims"]:
        field = make_disk_environment(p["k_r"], ambient_dim=int(dim))
        point = np.zeros(int(dim))
        point[:2] = p["point"]
        warmup(int(dim))
        oracle = solve_gradient(field, bc, src,
                                _disk_walk(p, p["oracle_walks"], p["oracle_seed"]),
                                point, workers=workers)
        for n in p["n_grid"]:
            for seed in spec.seeds:
                est = solve_gradient(field, bc, src, _disk_walk(p, n, seed),
                                     point, workers=workers)
                rows.append([int(dim), n, seed, _angle_to(est.mean, oracle.mean)])
                trows.append([int(dim), n, seed, est.wall_time])
    files = {"summary": "dim_sweep.csv", "timing": "dim_sweep_timing.csv"}
    _write_csv(os.path.join(spec.out_dir, files["summary"]),
               _echo(spec) + " columns: ambient dimension, walks per estimate, "
               f"seed, angle to the {p['oracle_walks']}-walk oracle direction "
               "(rad; pi/2 for a zero estimate); potential: unit boundary "
               "data, no source, screening c",
               ["dim", "n_walks", "seed", "angle_error"], rows)
    _write_csv(os.path.join(spec.out_dir, files["timing"]),
               _echo(spec) + " columns: ambient dimension, walks per estimate, "
               "seed, solve wall time (s)",
               ["dim", "n_walks", "seed", "wall_time"], trows)
    files["plot"] = "dim_sweep.svg"
    files["plot_timing"] = "dim_sweep_timing.svg"
    record = _finish(spec, files)
    emit_plot(record, "loglog")
    return record


def _rr_field(p, kind):
    arm = rr_arm()
    obstacle = np.asarray(p["obstacle"], dtype=float)
    if kind == "ik":
        curve = collision_curve(arm, obstacle, n_points=p["n_col"])
        return arm, curve, ik_cspace_field(curve, arm)
    return arm, None, lipschitz_cspace_field(arm, obstacle)


def _run_rr(spec, workers, kind):
    p = spec.params
    arm, curve, field = _rr_field(p, kind)
    q_start = np.asarray(p["q_start"], dtype=float)
    q_goal = np.asarray(p["q_goal"], dtype=float)
    ik_ref = None
    ik_field = None
    if kind == "lipschitz":
        _, _, ik_field = _rr_field(p, "ik")
        walk = WalkConfig(epsilon=p["epsilon"], n_walks=p["n_walks"],
                          screening=0.0, seed=rng.derive_seed(spec.seeds[0], 7))
        cfg = PlanConfig(s_ub=p["s_ub"], max_iters=p["max_iters"],
                         walk=walk, goal=q_goal)
        ik_ref = integrate_path(ik_field, cfg, q_start, workers=workers)
    files = {}
    rows = []
    for si, seed in enumerate(spec.seeds):
        for ci, c in enumerate(p["c_grid"]):
            walk = WalkConfig(epsilon=p["epsilon"], n_walks=p["n_walks"],
                              screening=c, seed=rng.derive_seed(seed, ci))
            cfg = PlanConfig(s_ub=p["s_ub"], max_iters=p["max_iters"],
                             walk=walk, goal=q_goal)
            path = integrate_path(field, cfg, q_start, workers=workers)
            row = [c, seed, path.status, path.length, path.points.shape[0] - 1]
            if ik_ref is not None:
                row.append(discrete_frechet(path.points, ik_ref.points))
            rows.append(row)
            if si == 0:
                role = f"path_c{c:g}"
                files[role] = f"{role}.csv"
                write_path_csv(path, field, os.path.join(spec.out_dir, files[role]))
    if curve is not None and curve.points.shape[0] > 0:
        files["collision_curve"] = "collision_curve.csv"
        _write_csv(os.path.join(spec.out_dir, files["collision_curve"]),
                   "collision curve configurations columns: first joint (rad), "
                   "second joint (rad)",
                   ["q0", "q1"], [list(q) for q in curve.points])
    if ik_ref is not None:
        files["path_ik_ref"] = "path_ik_ref.csv"
        write_path_csv(ik_ref, ik_field, os.path.join(spec.out_dir, files["path_ik_ref"]))
    cols = ["c", "seed", "status", "length", "n_steps"]
    comment = (_echo(spec) + " columns: screening coefficient, seed, planner "
               "status, path length, step count")
    if ik_ref is not None:
        cols.append("frechet_to_ik")
        comment += ", discrete Frechet distance to the ik-field path"
    files["summary"] = f"{spec.name}.csv"
    _write_csv(os.path.join(spec.out_dir, files["summary"]), comment, cols, rows)
    files["plot"] = f"{spec.name}.svg"
    record = _finish(spec, files)
    emit_plot(record, "path_overlay")
    return record


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> RunRecord:
    """Run one named experiment, writing its artifacts under spec.out_dir."""
    os.makedirs(spec.out_dir, exist_ok=True)
    runners = {
        "multistart": _run_multistart,
        "screening_sweep": _run_screening_sweep,
        "visibility_sweep": _run_visibility_sweep,
        "nwalks_sweep": _run_nwalks_sweep,
        "parallel_sweep": _run_parallel_sweep,
        "dim_sweep": _run_dim_sweep,
        "rr_ik": lambda s, w: _run_rr(s, w, "ik"),
        "rr_lipschitz": lambda s, w: _run_rr(s, w, "lipschitz"),
    }
    return runners[spec.name](spec, workers)


def _disk_circles(params) -> list:
    k_r = params["k_r"]
    r_u = 10.0 * k_r
    return [
        {"center": (0.0, 0.0), "radius": 10.0, "color": "#000000"},
        {"center": (0.0, r_u), "radius": r_u, "color": "#555555", "fill": "#dddddd"},
        {"center": (0.0, -r_u / 2), "radius": r_u / 2, "color": "#555555",
         "fill": "#dddddd"},
    ]


def _overlay_series(record: RunRecord):
    polylines = []
    for role in sorted(record.files):
        if not role.startswith("path"):
            continue
        data = read_path_csv(record.path(role))
        polylines.append({"label": role.replace("path_", ""),
                          "points": data["points"]})
    return polylines


def emit_plot(record: RunRecord, kind: str) -> str:
    """Render one figure kind from a run record; returns the SVG path."""
    params = record.spec["params"]
    if kind == "path_overlay":
        polylines = _overlay_series(record)
        if not polylines:
            raise ValueError("missing series: no path_* files in record")
        fname = record.path("plot")
        if record.name.startswith("rr"):
            qu = rr_arm().q_upper_arr
            box = np.array([[-qu[0], -qu[1]], [qu[0], -qu[1]], [qu[0], qu[1]],
                            [-qu[0], qu[1]], [-qu[0], -qu[1]]])
            polylines.insert(0, {"label": "joint bounds", "points": box,
                                 "color": "#000000"})
            if "collision_curve" in record.files:
                _, _, pts = _read_csv(record.path("collision_curve"))
                polylines.insert(1, {"label": "collision curve", "points": pts,
                                     "color": "#aaaaaa"})
            marks = [{"xy": params["q_start"], "label": "start"},
                     {"xy": params["q_goal"], "label": "goal"}]
            svg.plot_paths(fname, polylines, points=marks, title=record.name)
        else:
            marks = [{"xy": (8.0, 0.0), "label": "goal"}]
            k_r = params.get("k_r")
            circles = _disk_circles(params) if k_r is not None else []
            if "k_r_grid" in params:
                circles = []
                for k_r in params["k_r_grid"]:
                    circles.extend(_disk_circles({"k_r": k_r})[1:])
                circles.insert(0, _disk_circles({"k_r": 0.3})[0])
                for c in circles[1:]:
                    c["fill"] = "none"
            svg.plot_paths(fname, polylines, circles=circles, points=marks,
                           title=record.name)
        return fname
    if kind == "loglog":
        if record.name not in ("dim_sweep", "nwalks_sweep"):
            raise ValueError(f"missing series: no loglog view for {record.name}")
        if "summary" not in record.files:
            raise ValueError("missing series: no summary file in record")
        _, names, data = _read_csv(record.path("summary"))
        fname = record.path("plot")
        if record.name == "dim_sweep":
            series = []
            dims = np.unique(data[:, 0]).astype(int)
            for i, dim in enumerate(dims):
                sub = data[data[:, 0] == dim]
                series.append({"label": f"dim {dim}", "x": sub[:, 1],
                               "y": np.maximum(sub[:, 3], 1e-12),
                               "scatter": True, "color": svg.PALETTE[i]})
            svg.plot_xy(fname, series, x_label="n_walks",
                        y_label="angle error (rad)", title="dim_sweep",
                        xlog=True, ylog=True, mean_lines=True)
            if "timing" in record.files and "plot_timing" in record.files:
                _, _, tdata = _read_csv(record.path("timing"))
                tseries = []
                for i, dim in enumerate(dims):
                    sub = tdata[tdata[:, 0] == dim]
                    tseries.append({"label": f"dim {dim}", "x": sub[:, 1],
                                    "y": sub[:, 3], "scatter": True,
                                    "color": svg.PALETTE[i]})
                svg.plot_xy(record.path("plot_timing"), tseries,
                            x_label="n_walks", y_label="wall time (s)",
                            title="dim_sweep timing", xlog=True, ylog=True,
                            mean_lines=True)
        else:  # nwalks_sweep
            svg.plot_xy(fname, [{"label": "angle error", "x": data[:, 0],
                                 "y": np.maximum(data[:, 2], 1e-12),
                                 "scatter": True}],
                        x_label="n_walks", y_label="angle error (rad)",
                        title="nwalks_sweep", xlog=True, ylog=True,
                        mean_lines=True)
        return fname
    if kind == "box_timing":
        if "timing" not in record.files:
            raise ValueError("missing series: no timing file in record")
        _, names, data = _read_csv(record.path("timing"))
        groups = []
        for w in np.unique(data[:, 0]).astype(int):
            for n in np.unique(data[:, 1]).astype(int):
                sel = (data[:, 0] == w) & (data[:, 1] == n)
                if np.any(sel):
                    groups.append({"label": f"w={w} n=1e{int(math.log10(n))}"
                                   if 10 ** int(math.log10(n)) == n else f"w={w} n={n}",
                                   "values": data[sel, 3]})
        fname = record.path("plot")
        svg.plot_boxes(fname, groups, x_label="workers / walks",
                       y_label="wall time (s)", title=record.name, ylog=True)
        return fname
    raise ValueError(f"unknown plot kind {kind!r}")
