"""Path integration by normalized gradient ascent on a screened potential.

The potential is induced by a unit point source at the goal and absorbing
(zero) boundary data, so its gradient points toward the goal along paths
that avoid the boundary.  Each iterate re-estimates the gradient with a
fresh walk ensemble, steps by min(s_ub, half the distance to the
boundary) along the normalized estimate, and stops once within goal_tol
of the goal.  Capping the step at half the distance keeps every iterate
strictly inside the free space regardless of estimator noise.

Seeds advance deterministically per step (derived from the base seed and
the step index), so a path is a pure function of its configuration.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import rng
from .geometry import DistanceField
from .solver import BoundarySpec, Estimate, SourceSpec, WalkConfig, solve_gradient

# Stall only when the estimate carries no direction at all.  Screened
# potentials span huge dynamic ranges (|grad u| ~ 1e-22 across the demo
# disk at c=10) yet normalize perfectly well; only an exact zero (no walk
# saw the source) or a subnormal norm is unusable.
_STALL_NORM = 1e-300


@dataclass(frozen=True)
class PlanConfig:
    """Step rule, stopping rule, and per-step walk budget for one plan."""

    s_ub: float
    max_iters: int
    walk: WalkConfig
    goal: np.ndarray
    goal_tol: Optional[float] = None

    def __post_init__(self):
        if not self.s_ub > 0:
            raise ValueError("s_ub must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        goal = np.asarray(self.goal, dtype=float).reshape(-1)
        object.__setattr__(self, "goal", goal)
        if self.goal_tol is None:
            object.__setattr__(self, "goal_tol", self.s_ub)
        elif not self.goal_tol > 0:
            raise ValueError("goal_tol must be positive")


@dataclass(frozen=True)
class PathResult:
    points: np.ndarray  # (n_points, dim), first row is the start
    step_gradients: list  # Estimate per step taken
    status: str  # reached | max_iters | stalled
    length: float


def path_length(points) -> float:
    """Sum of Euclidean segment lengths along an ordered point list."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise ValueError("need at least one point")
    if pts.shape[0] == 1:
        return 0.0
    return float(np.sqrt(np.sum(np.diff(pts, axis=0) ** 2, axis=1)).sum())


def integrate_path(field: DistanceField, cfg: PlanConfig, start,
                   workers: int = 1) -> PathResult:
    """Ascend the goal-sourced potential from start until within goal_tol.

    Every step solves a fresh gradient estimate at the current point with
    seed derive_seed(cfg.walk.seed, step_index); the step length is
    min(s_ub, 0.5 * distance), so the path never leaves the domain.
    Status is `reached`, `max_iters`, or `stalled` (gradient estimate
    vanished, e.g. a potential that is identically zero).
    """
    x = np.asarray(start, dtype=float).reshape(-1).copy()
    if x.shape != cfg.goal.shape:
        raise ValueError("start and goal dimensions differ")
    if not field.distance(x) > 0:
        raise ValueError("start is outside the domain")
    if not field.distance(cfg.goal) > 0:
        raise ValueError("goal is outside the domain")

    bc = BoundarySpec(0.0)
    src = SourceSpec.dirac(cfg.goal)
    points = [x.copy()]
    grads: list[Estimate] = []
    status = "max_iters"
    for k in range(cfg.max_iters):
        if float(np.linalg.norm(x - cfg.goal)) <= cfg.goal_tol:
            status = "reached"
            break
        walk_k = dataclasses.replace(cfg.walk, seed=rng.derive_seed(cfg.walk.seed, k))
        est = solve_gradient(field, bc, src, walk_k, x, workers=workers)
        grads.append(est)
        g = est.mean
        norm = float(np.linalg.norm(g))
        if norm < _STALL_NORM:
            status = "stalled"
            break
        s = min(cfg.s_ub, 0.5 * float(field.distance(x)))
        x = x + (s / norm) * g
        points.append(x.copy())
    else:
        if float(np.linalg.norm(x - cfg.goal)) <= cfg.goal_tol:
            status = "reached"

    pts = np.vstack(points)
    return PathResult(points=pts, step_gradients=grads, status=status,
                      length=path_length(pts))


def varadhan_transform(u, t: float):
    """Distance-like reading -sqrt(t)*ln(u) of potential values.

    Vectorised in u (scalar in, scalar out); every entry must be positive.
    """
    u_arr = np.asarray(u, dtype=float)
    if not np.all(u_arr > 0):
        raise ValueError("u must be positive")
    if not t > 0:
        raise ValueError("t must be positive")
    out = -math.sqrt(t) * np.log(u_arr)
    return float(out) if out.ndim == 0 else out


def discrete_frechet(a, b) -> float:
    """Discrete Frechet distance between two ordered point sequences."""
    pa = np.asarray(a, dtype=float)
    pb = np.asarray(b, dtype=float)
    if pa.ndim != 2 or pb.ndim != 2 or pa.shape[0] < 1 or pb.shape[0] < 1:
        raise ValueError("need two nonempty point sequences")
    d = np.sqrt(((pa[:, None, :] - pb[None, :, :]) ** 2).sum(axis=2))
    n, m = d.shape
    ca = np.empty((n, m))
    ca[0, 0] = d[0, 0]
    for j in range(1, m):
        ca[0, j] = max(ca[0, j - 1], d[0, j])
    for i in range(1, n):
        ca[i, 0] = max(ca[i - 1, 0], d[i, 0])
        for j in range(1, m):
            ca[i, j] = max(min(ca[i - 1, j], ca[i - 1, j - 1], ca[i, j - 1]), d[i, j])
    return float(ca[n - 1, m - 1])


def write_path_csv(path: PathResult, field: DistanceField, fname) -> None:
    """One row per path point: coordinates, gradient mean, step size, distance.

    The gradient/step columns on a row describe the step leaving that
    point; the final point carries nan there.  Floats use 17 significant
    digits so a read round-trips bit-exactly.
    """
    pts = path.points
    dim = pts.shape[1]
    n = pts.shape[0]
    g = np.full((n, dim), np.nan)
    s = np.full(n, np.nan)
    for k, est in enumerate(path.step_gradients):
        g[k] = est.mean
        if k + 1 < n:
            s[k] = float(np.linalg.norm(pts[k + 1] - pts[k]))
    d = field.distance(pts)
    cols = [f"x{i}" for i in range(dim)] + [f"g{i}" for i in range(dim)]
    cols += ["step_size", "distance"]
    with open(fname, "w", newline="") as fh:
        fh.write(f"# status={path.status} length={path.length:.17g} dim={dim}\n")
        fh.write(",".join(cols) + "\n")
        for k in range(n):
            row = list(pts[k]) + list(g[k]) + [s[k], d[k]]
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def read_path_csv(fname) -> dict:
    """Read a path CSV back into arrays plus the header metadata.

    Returns a dict with keys points, gradients, step_sizes, distances,
    status, length; gradient rows without an estimate are nan.
    """
    with open(fname) as fh:
        header = fh.readline().strip()
        if not header.startswith("# status="):
            raise ValueError("missing path header comment line")
        names = fh.readline().strip().split(",")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    meta = dict(part.split("=", 1) for part in header[2:].split())
    dim = int(meta["dim"])
    if data.shape[1] != len(names) or len(names) != 2 * dim + 2:
        raise ValueError("column count does not match header dim")
    return {
        "points": data[:, :dim],
        "gradients": data[:, dim:2 * dim],
        "step_sizes": data[:, 2 * dim],
        "distances": data[:, 2 * dim + 1],
        "status": meta["status"],
        "length": float(meta["length"]),
    }
