"""Walk-on-spheres estimators for the screened Poisson equation.

Estimates u(x) and grad u(x) for (Laplacian - c) u = f on an implicit
domain with Dirichlet data g, as means of independent single-walk
estimates.  Each walk jumps to a uniform point on the largest empty
sphere, multiplying a survival throughput per jump; a point source adds
its ball Green's factor whenever it falls inside the current sphere, and
a general source is picked up by one uniform volume sample per jump.

Walk i draws every random number from a counter keyed by (seed, i, step,
slot), so the sample set is a pure function of the configuration: worker
count, batching, and n_walks never change the value walk i produces.
Batches are a fixed 16384 walks and partial sums are combined in batch
order, which keeps floating-point results bit-identical across worker
counts.

Two execution paths produce the estimates: a compiled kernel for the
common case (constant g, point source or none, primitive-shape fields)
and a vectorized numpy path for callable boundary data, volume sources,
or custom fields.  The path is chosen by the problem alone, never by
n_walks or workers.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Callable, Optional, Union

import numpy as np

from . import _engine, kernels, rng
from .geometry import DistanceField

_BATCH = 16384


@dataclass(frozen=True)
class WalkConfig:
    """Walk budget and physics: ε-shell, screening c, seed, safety cap."""

    epsilon: float
    n_walks: int
    screening: float = 0.0
    max_steps: int = 10_000
    seed: int = 0
    c_imp: float = 1.0

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.n_walks < 1:
            raise ValueError("n_walks must be at least 1")
        if self.screening < 0:
            raise ValueError("screening must be nonnegative")
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")
        if not self.c_imp > 0:
            raise ValueError("c_imp must be positive")


@dataclass(frozen=True)
class BoundarySpec:
    """Dirichlet data g: a constant, or a callable g(x) -> float evaluated
    one boundary point at a time (walk stop points are projected onto the
    boundary first when the field knows how)."""

    g: Union[float, Callable] = 0.0


@dataclass(frozen=True)
class SourceSpec:
    """Right-hand-side forcing: nothing, a point impulse, or a callable.

    A dirac source of positive magnitude is an attractive impulse: it
    raises the solution near z (the equation solved is
    (Laplacian - c) u = -magnitude * delta_z).  A callable f is the
    right-hand side of (Laplacian - c) u = f as written.
    """

    kind: str
    z: Optional[np.ndarray] = None
    magnitude: float = 1.0
    f: Optional[Callable] = None

    def __post_init__(self):
        if self.kind not in ("none", "dirac", "callable"):
            raise ValueError(f"unknown source kind {self.kind!r}")
        if self.kind == "dirac":
            if self.z is None:
                raise ValueError("dirac source needs a location z")
            object.__setattr__(self, "z", np.asarray(self.z, dtype=float))
        if self.kind == "callable" and self.f is None:
            raise ValueError("callable source needs f")

    @staticmethod
    def none() -> "SourceSpec":
        return SourceSpec(kind="none")

    @staticmethod
    def dirac(z, magnitude: float = 1.0) -> "SourceSpec":
        return SourceSpec(kind="dirac", z=np.asarray(z, dtype=float),
                          magnitude=float(magnitude))

    @staticmethod
    def from_callable(f: Callable) -> "SourceSpec":
        return SourceSpec(kind="callable", f=f)


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo mean with its spread and walk statistics."""

    mean: Union[float, np.ndarray]
    sample_variance: Union[float, np.ndarray]
    n_samples: int
    mean_steps_per_walk: float
    n_truncated: int
    wall_time: float


def angle_error(g_hat, g_ref) -> float:
    """Angle in radians between two nonzero vectors."""
    a = np.asarray(g_hat, dtype=float)
    b = np.asarray(g_ref, dtype=float)
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise ValueError("angle_error is undefined for zero-norm vectors")
    return float(np.arccos(np.clip(np.dot(a, b) / (na * nb), -1.0, 1.0)))


# ---------------------------------------------------------------------------
# payload assembly and engine selection

def _build_payload(field, bc, src, cfg, x, mode):
    x0 = np.ascontiguousarray(x, dtype=np.float64)
    dim = field.dim
    if x0.shape != (dim,):
        raise ValueError(f"query point must have shape ({dim},)")
    if dim < 2:
        raise ValueError("walks require dimension >= 2")
    d0 = float(field.distance(x0))
    if d0 <= 0:
        raise ValueError("query point lies outside the domain")
    if mode == 1 and d0 <= cfg.epsilon:
        raise ValueError("gradient queries need distance(x) > epsilon")
    if src.kind == "dirac":
        if src.z.shape != (dim,):
            raise ValueError("source location has wrong dimension")
        if float(field.distance(src.z)) <= 0:
            raise ValueError("dirac source must lie strictly inside the domain")
    cf = None
    if not callable(bc.g) and src.kind != "callable" and dim <= _engine.MAX_DIM:
        cf = _engine.compile_field(field)
    engine = "fast" if cf is not None else "generic"
    z = src.z if src.kind == "dirac" else np.zeros(dim)
    return {
        "mode": mode,
        "engine": engine,
        "cf": cf,
        "field": field,
        "bc": bc,
        "src": src,
        "cfg": cfg,
        "x0": x0,
        "r0": d0,
        "dim": dim,
        "z": z,
        "g_const": 0.0 if callable(bc.g) else float(bc.g),
        "src_kind": {"none": 0, "dirac": 1, "callable": 2}[src.kind],
    }


def _sample_dirs(keys, t, dim, base_slot):
    """Unit directions from the per-walk counter stream (numpy twin of the
    kernel's sampler; same slot layout)."""
    m = keys.shape[0]
    if dim == 2:
        ang = 2.0 * np.pi * rng.draw_u01(keys, t, base_slot)
        return np.stack([np.cos(ang), np.sin(ang)], axis=1)
    cols = []
    for j in range((dim + 1) // 2):
        u1 = rng.draw_u01(keys, t, base_slot + 2 * j)
        u2 = rng.draw_u01(keys, t, base_slot + 2 * j + 1)
        rad = np.sqrt(-2.0 * np.log(u1))
        ang = 2.0 * np.pi * u2
        cols.append(rad * np.cos(ang))
        cols.append(rad * np.sin(ang))
    v = np.stack(cols[:dim], axis=1)
    nrm = np.sqrt(np.sum(v * v, axis=1))
    bad = nrm < 1e-12
    if np.any(bad):
        v[bad] = 0.0
        v[bad, 0] = 1.0
        nrm[bad] = 1.0
    return v / nrm[:, None]


def _eval_g(bc, field, pts):
    if not callable(bc.g):
        return np.full(pts.shape[0], float(bc.g))
    out = np.empty(pts.shape[0])
    for i in range(pts.shape[0]):
        xb = field.closest_boundary_point(pts[i])
        out[i] = bc.g(pts[i] if xb is None else xb)
    return out


def _eval_f(f, pts):
    try:
        out = np.asarray(f(pts), dtype=float)
        if out.shape == (pts.shape[0],):
            return out
    except Exception:
        pass
    return np.asarray([float(f(p)) for p in pts])


def _generic_batch(p, keys):
    """Vectorized value/gradient walks; mirrors the compiled kernel."""
    field, bc, src, cfg = p["field"], p["bc"], p["src"], p["cfg"]
    dim, mode = p["dim"], p["mode"]
    c = cfg.screening
    m = keys.shape[0]
    if mode == 1:
        v0 = _sample_dirs(keys, 0, dim, 0)
        pos = p["x0"][None, :] + p["r0"] * v0
        t = 1
    else:
        v0 = None
        pos = np.repeat(p["x0"][None, :], m, axis=0)
        t = 0
    t_start = t
    T = np.ones(m)
    acc = np.zeros(m)
    val = np.zeros(m)
    steps = np.zeros(m, dtype=np.int64)
    trunc = np.zeros(m, dtype=np.int64)
    alive = np.arange(m)
    while alive.size:
        d = np.atleast_1d(field.distance(pos[alive]))
        done = d < cfg.epsilon
        if np.any(done):
            fin = alive[done]
            val[fin] = acc[fin] + T[fin] * _eval_g(bc, field, pos[fin])
            steps[fin] = t
        live = alive[~done]
        if live.size == 0:
            break
        dl = d[~done]
        if t - t_start >= cfg.max_steps:
            val[live] = acc[live] + T[live] * _eval_g(bc, field, pos[live])
            steps[live] = t
            trunc[live] = 1
            break
        if src.kind == "dirac":
            dz = np.sqrt(np.sum((pos[live] - p["z"][None, :]) ** 2, axis=1))
            pick = (dz > 0.0) & (dz < dl)
            if np.any(pick):
                ii = live[pick]
                acc[ii] += T[ii] * src.magnitude * kernels.green(dim, c, dz[pick], dl[pick])
        elif src.kind == "callable":
            u_r = rng.draw_u01(keys[live], t, 6)
            r = dl * u_r ** (1.0 / dim)
            y = pos[live] + r[:, None] * _sample_dirs(keys[live], t, dim, 7)
            fv = _eval_f(src.f, y)
            r_safe = np.maximum(r, 1e-12 * dl)
            acc[live] -= T[live] * kernels.ball_volume(dim, dl) * fv \
                * kernels.green(dim, c, r_safe, dl)
        pos[live] += dl[:, None] * _sample_dirs(keys[live], t, dim, 0)
        T[live] *= kernels.norm_constant(dim, c, dl)
        t += 1
        alive = live
    return val, v0, steps, trunc


def _batch_values(p, start, size):
    """Per-walk values (and gradient directions) for one batch."""
    idx = np.arange(start, start + size, dtype=np.uint64)
    keys = rng.walk_keys(p["cfg"].seed, idx)
    cfg = p["cfg"]
    if p["engine"] == "fast":
        vals, vdir, steps, trunc, recs = _engine.run_batch(
            p["mode"], keys, p["x0"], p["r0"], p["cf"], cfg.epsilon,
            cfg.screening, cfg.max_steps, p["g_const"], p["src_kind"],
            p["z"], p["src"].magnitude if p["src"].kind == "dirac" else 0.0)
        if recs[0].size:
            gr = kernels.green(p["dim"], cfg.screening, recs[2], recs[3])
            np.add.at(vals, recs[0], recs[1] * gr)
    else:
        vals, vdir, steps, trunc = _generic_batch(p, keys)
    return vals, vdir, steps, trunc


def _batch_partials(p, start, size):
    vals, vdir, steps, trunc = _batch_values(p, start, size)
    if p["mode"] == 0:
        return (float(np.sum(vals)), float(np.sum(vals * vals)),
                int(np.sum(steps)), int(np.sum(trunc)))
    gw = (p["dim"] / p["r0"]) * vals[:, None] * vdir
    return (np.sum(gw, axis=0), np.sum(gw * gw, axis=0),
            int(np.sum(steps)), int(np.sum(trunc)))


_POOL_PAYLOAD = None


def _pool_init(payload):
    global _POOL_PAYLOAD
    _POOL_PAYLOAD = payload


def _pool_task(args):
    start, size = args
    return _batch_partials(_POOL_PAYLOAD, start, size)


def _dirac_grad_term(p):
    """Deterministic near-source gradient term c_imp * grad G(x0, z)."""
    src, cfg = p["src"], p["cfg"]
    dim, x0, r0 = p["dim"], p["x0"], p["r0"]
    if src.kind != "dirac":
        return np.zeros(dim)
    diff = x0 - src.z
    dz = float(np.linalg.norm(diff))
    if dz == 0.0:
        raise ValueError("gradient query at the source point is undefined")
    if dz >= r0:
        return np.zeros(dim)
    gp = float(kernels.green_grad_radial(dim, cfg.screening, dz, r0))
    return cfg.c_imp * src.magnitude * gp * diff / dz


def _solve(field, bc, src, cfg, x, workers, mode) -> Estimate:
    t_begin = time.perf_counter()
    p = _build_payload(field, bc, src, cfg, x, mode)
    if p["engine"] == "fast":
        _engine.warmup(p["dim"])
    n = cfg.n_walks
    batches = [(s, min(_BATCH, n - s)) for s in range(0, n, _BATCH)]
    if workers > 1 and len(batches) > 1:
        ctx = get_context("fork")
        with ctx.Pool(processes=workers, initializer=_pool_init,
                      initargs=(p,)) as pool:
            partials = pool.map(_pool_task, batches)
    else:
        partials = [_batch_partials(p, s, m) for s, m in batches]
    if mode == 0:
        s1, s2 = 0.0, 0.0
    else:
        s1 = np.zeros(p["dim"])
        s2 = np.zeros(p["dim"])
    steps_sum = 0
    trunc_sum = 0
    for b1, b2, bs, bt in partials:
        s1 = s1 + b1
        s2 = s2 + b2
        steps_sum += bs
        trunc_sum += bt
    mean = s1 / n
    if n > 1:
        var = (s2 - n * mean * mean) / (n - 1)
        var = np.maximum(var, 0.0) if mode == 1 else max(float(var), 0.0)
    else:
        var = np.zeros(p["dim"]) if mode == 1 else 0.0
    if mode == 1:
        mean = mean + _dirac_grad_term(p)
    wall = time.perf_counter() - t_begin
    return Estimate(
        mean=float(mean) if mode == 0 else mean,
        sample_variance=var,
        n_samples=n,
        mean_steps_per_walk=steps_sum / n,
        n_truncated=trunc_sum,
        wall_time=wall,
    )


def solve_value(field: DistanceField, bc: BoundarySpec, src: SourceSpec,
                cfg: WalkConfig, x, workers: int = 1) -> Estimate:
    """Estimate u(x) as the mean of cfg.n_walks independent walks."""
    return _solve(field, bc, src, cfg, x, workers, mode=0)


def solve_gradient(field: DistanceField, bc: BoundarySpec, src: SourceSpec,
                   cfg: WalkConfig, x, workers: int = 1) -> Estimate:
    """Estimate grad u(x); mean is a vector of field.dim components."""
    return _solve(field, bc, src, cfg, x, workers, mode=1)


def walk_value(field: DistanceField, bc: BoundarySpec, src: SourceSpec,
               cfg: WalkConfig, x, walk_index: int) -> float:
    """The single-walk value estimate for one walk index.

    Depends only on (cfg.seed, walk_index) and the problem, never on
    n_walks or batching; solve_value averages exactly these numbers.
    """
    p = _build_payload(field, bc, src, cfg, x, mode=0)
    vals, _, _, _ = _batch_values(p, walk_index, 1)
    return float(vals[0])


def walk_gradient(field: DistanceField, bc: BoundarySpec, src: SourceSpec,
                  cfg: WalkConfig, x, walk_index: int) -> np.ndarray:
    """The single-walk gradient estimate (including the deterministic
    near-source term, which is shared by every walk)."""
    p = _build_payload(field, bc, src, cfg, x, mode=1)
    vals, vdir, _, _ = _batch_values(p, walk_index, 1)
    return (p["dim"] / p["r0"]) * vals[0] * vdir[0] + _dirac_grad_term(p)
