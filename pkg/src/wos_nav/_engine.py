"""Compiled single-core walk kernel.

The hot loop covers the common configuration (constant boundary value,
point source or none, field expressible as a union of primitive shapes).
Anything else falls back to the vectorized numpy path in `solver`.

Random draws replicate `rng` bit for bit: every uniform is a hash of
(walk key, step, slot), so results never depend on batching or worker
count.  Slots 0-5 feed the sphere direction; slots 6-12 are reserved for
volume-source sampling, which this kernel never performs.

Bessel-backed normalization constants are evaluated inline from an
all-positive power series for small arguments and a scaled asymptotic
series for large ones; point-source Green's factors are deferred to the
caller as (walk, weight, r, R) records so they can be evaluated with
scipy in one vectorized pass.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

_PHI64 = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_TWO_NEG53 = 2.0**-53
_TWO_NEG54 = 2.0**-54
_TWO_PI = 6.283185307179586

CODE_BALL = 0
CODE_DISK = 1
CODE_BOX = 2
CODE_POINTS = 3
CODE_ARM2 = 4

MAX_DIM = 6


@njit(cache=True, inline="always")
def _mix64(x):
    x = (x ^ (x >> _S30)) * _M1
    x = (x ^ (x >> _S27)) * _M2
    return x ^ (x >> _S31)


@njit(cache=True, inline="always")
def _u01(key, t, slot):
    ctr = np.uint64(t * 16 + slot + 1)
    h = _mix64(key + ctr * _PHI64)
    return float(h >> _S11) * _TWO_NEG53 + _TWO_NEG54


@njit(cache=True, inline="always")
def _draw_dir(key, t, dim, v):
    if dim == 2:
        ang = _TWO_PI * _u01(key, t, 0)
        v[0] = math.cos(ang)
        v[1] = math.sin(ang)
        return
    npairs = (dim + 1) // 2
    for j in range(npairs):
        u1 = _u01(key, t, 2 * j)
        u2 = _u01(key, t, 2 * j + 1)
        rad = math.sqrt(-2.0 * math.log(u1))
        ang = _TWO_PI * u2
        v[2 * j] = rad * math.cos(ang)
        if 2 * j + 1 < dim:
            v[2 * j + 1] = rad * math.sin(ang)
    s = 0.0
    for j in range(dim):
        s += v[j] * v[j]
    if s < 1e-24:
        for j in range(dim):
            v[j] = 0.0
        v[0] = 1.0
        return
    inv = 1.0 / math.sqrt(s)
    for j in range(dim):
        v[j] *= inv


@njit(cache=True)
def _norm_c(dim, c, R):
    # survival weight of one sphere jump: (Z/2)^nu / (Gamma(nu+1) I_nu(Z))
    if c <= 0.0:
        return 1.0
    Z = math.sqrt(c) * R
    if dim == 3:
        return 2.0 * Z * math.exp(-Z) / (-math.expm1(-2.0 * Z))
    nu = 0.5 * dim - 1.0
    if Z < 20.0:
        q = 0.25 * Z * Z
        term = 1.0
        s = 1.0
        for k in range(1, 400):
            term *= q / (k * (nu + k))
            s += term
            if term <= 1e-17 * s:
                break
        return 1.0 / s
    # scaled asymptotic series for I_nu(Z) e^{-Z}
    fournu2 = 4.0 * nu * nu
    tsum = 1.0
    tk = 1.0
    for k in range(60):
        tnext = -tk * (fournu2 - (2.0 * k + 1.0) ** 2) / (8.0 * Z * (k + 1.0))
        if abs(tnext) >= abs(tk):
            break
        tk = tnext
        tsum += tk
        if abs(tk) < 1e-18:
            break
    ive = tsum / math.sqrt(_TWO_PI * Z)
    return math.exp(nu * math.log(0.5 * Z) - Z - math.lgamma(nu + 1.0)) / ive


@njit(cache=True, inline="always")
def _seg_dist2(px, py, ax, ay, bx, by):
    abx = bx - ax
    aby = by - ay
    denom = abx * abx + aby * aby
    t = 0.0
    if denom > 0.0:
        t = ((px - ax) * abx + (py - ay) * aby) / denom
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
    dx = px - (ax + t * abx)
    dy = py - (ay + t * aby)
    return dx * dx + dy * dy


@njit(cache=True)
def _dist(codes, offs, params, aux, x, dim):
    best = 1e300
    for i in range(codes.shape[0]):
        code = codes[i]
        o = offs[i]
        if code == 0:  # ball
            s = 0.0
            for j in range(dim):
                dj = x[j] - params[o + 1 + j]
                s += dj * dj
            d = params[o] - math.sqrt(s)
        elif code == 1:  # disk environment, first two coordinates
            ru = params[o] * 10.0
            rl = 0.5 * ru
            d = 10.0 - math.sqrt(x[0] * x[0] + x[1] * x[1])
            du = math.sqrt(x[0] * x[0] + (x[1] - ru) ** 2) - ru
            if du < d:
                d = du
            dl = math.sqrt(x[0] * x[0] + (x[1] + rl) ** 2) - rl
            if dl < d:
                d = dl
        elif code == 2:  # box
            d = 1e300
            for j in range(dim):
                lo = x[j] - params[o + j]
                if lo < d:
                    d = lo
                hi = params[o + dim + j] - x[j]
                if hi < d:
                    d = hi
        elif code == 3:  # point set
            start = int(params[o])
            n = int(params[o + 1])
            b2 = 1e300
            for r in range(start, start + n):
                s = 0.0
                for j in range(dim):
                    dj = x[j] - aux[r, j]
                    s += dj * dj
                if s < b2:
                    b2 = s
            d = math.sqrt(b2)
        else:  # two-link arm clearance bound
            l1 = params[o]
            l2 = params[o + 1]
            d = x[0] + params[o + 2]
            if params[o + 2] - x[0] < d:
                d = params[o + 2] - x[0]
            if x[1] + params[o + 3] < d:
                d = x[1] + params[o + 3]
            if params[o + 3] - x[1] < d:
                d = params[o + 3] - x[1]
            p1x = l1 * math.cos(x[0])
            p1y = l1 * math.sin(x[0])
            p2x = p1x + l2 * math.cos(x[0] + x[1])
            p2y = p1y + l2 * math.sin(x[0] + x[1])
            ox = params[o + 4]
            oy = params[o + 5]
            d2 = _seg_dist2(ox, oy, 0.0, 0.0, p1x, p1y)
            e2 = _seg_dist2(ox, oy, p1x, p1y, p2x, p2y)
            if e2 < d2:
                d2 = e2
            dt = math.sqrt(d2) / params[o + 6]
            if dt < d:
                d = dt
        if d < best:
            best = d
    return best


@njit(cache=True)
def _dist_single(codes, offs, params, aux, x):
    return _dist(codes, offs, params, aux, x, x.shape[0])


@njit(cache=True)
def _run_batch(mode, keys, x0, r0, codes, offs, params, aux,
               eps, cval, max_steps, g_const, src_kind, zsrc, mag,
               out_val, out_vdir, out_steps, out_trunc,
               rec_row, rec_w, rec_r, rec_R):
    """Walk every key to termination.

    mode 0: value walks from x0.  mode 1: gradient walks; the first jump
    (step 0 slots) lands on the sphere of radius r0 and its direction is
    stored in out_vdir, after which a value walk continues from step 1.
    Returns the number of source records written, or -1 if the record
    buffer overflowed (caller retries with a larger one).
    """
    m = keys.shape[0]
    dim = x0.shape[0]
    cap = rec_row.shape[0]
    nrec = 0
    x = np.empty(dim)
    v = np.empty(dim)
    for i in range(m):
        key = keys[i]
        for j in range(dim):
            x[j] = x0[j]
        t = 0
        if mode == 1:
            _draw_dir(key, 0, dim, v)
            for j in range(dim):
                out_vdir[i, j] = v[j]
                x[j] = x0[j] + r0 * v[j]
            t = 1
        t_start = t
        T = 1.0
        val = 0.0
        trunc = 0
        while True:
            d = _dist(codes, offs, params, aux, x, dim)
            if d < eps:
                val = T * g_const
                break
            if t - t_start >= max_steps:
                val = T * g_const
                trunc = 1
                break
            if src_kind == 1:
                s = 0.0
                for j in range(dim):
                    dj = x[j] - zsrc[j]
                    s += dj * dj
                dz = math.sqrt(s)
                if 0.0 < dz and dz < d:
                    if nrec >= cap:
                        return -1
                    rec_row[nrec] = i
                    rec_w[nrec] = T * mag
                    rec_r[nrec] = dz
                    rec_R[nrec] = d
                    nrec += 1
            _draw_dir(key, t, dim, v)
            for j in range(dim):
                x[j] += d * v[j]
            T *= _norm_c(dim, cval, d)
            t += 1
        out_val[i] = val
        out_steps[i] = t
        out_trunc[i] = trunc
    return nrec


class CompiledField:
    """Flattened union of primitive shapes consumable by the kernel."""

    __slots__ = ("codes", "offs", "params", "aux", "dim")

    def __init__(self, codes, offs, params, aux, dim):
        self.codes = codes
        self.offs = offs
        self.params = params
        self.aux = aux
        self.dim = dim

    def distance(self, x):
        return _dist_single(self.codes, self.offs, self.params, self.aux,
                            np.ascontiguousarray(x, dtype=np.float64))


def compile_field(field):
    """Encode a field for the kernel, or None when it has unsupported parts."""
    from .geometry import BallField, BoxField, DiskEnvironment, PointSetField, UnionField
    from .robot import LipschitzArmField

    if field.dim > MAX_DIM:
        return None
    members = []

    def flatten(f):
        if isinstance(f, UnionField):
            for g in f.members:
                flatten(g)
        else:
            members.append(f)

    flatten(field)
    codes, offs, params, aux_blocks = [], [], [], []
    aux_rows = 0
    for m in members:
        offs.append(len(params))
        if isinstance(m, BallField):
            codes.append(CODE_BALL)
            params.append(m.radius)
            params.extend(m.center.tolist())
        elif isinstance(m, DiskEnvironment):
            codes.append(CODE_DISK)
            params.append(m.k_r)
        elif isinstance(m, BoxField):
            codes.append(CODE_BOX)
            params.extend(m.lower.tolist())
            params.extend(m.upper.tolist())
        elif isinstance(m, PointSetField):
            codes.append(CODE_POINTS)
            params.append(float(aux_rows))
            params.append(float(m.points.shape[0]))
            aux_blocks.append(np.asarray(m.points, dtype=np.float64))
            aux_rows += m.points.shape[0]
        elif isinstance(m, LipschitzArmField) and m.arm.n_joints == 2:
            codes.append(CODE_ARM2)
            l1, l2 = m.arm.link_lengths
            qu = m.arm.q_upper
            params.extend([l1, l2, qu[0], qu[1], m.x_obs[0], m.x_obs[1], m.k])
        else:
            return None
    if aux_blocks:
        aux = np.ascontiguousarray(np.vstack(aux_blocks))
    else:
        aux = np.zeros((0, field.dim))
    return CompiledField(
        codes=np.asarray(codes, dtype=np.int64),
        offs=np.asarray(offs, dtype=np.int64),
        params=np.asarray(params, dtype=np.float64),
        aux=aux,
        dim=field.dim,
    )


def run_batch(mode, keys, x0, r0, cf: CompiledField, eps, cval, max_steps,
              g_const, src_kind, zsrc, mag):
    """Drive the kernel for one batch; returns per-walk arrays and records."""
    m = keys.shape[0]
    out_val = np.empty(m)
    out_vdir = np.empty((m, cf.dim)) if mode == 1 else np.empty((1, 1))
    out_steps = np.empty(m, dtype=np.int64)
    out_trunc = np.empty(m, dtype=np.int64)
    cap = max(1024, 8 * m) if src_kind == 1 else 1
    while True:
        rec_row = np.empty(cap, dtype=np.int64)
        rec_w = np.empty(cap)
        rec_r = np.empty(cap)
        rec_R = np.empty(cap)
        nrec = _run_batch(mode, keys, x0, r0, cf.codes, cf.offs, cf.params,
                          cf.aux, eps, cval, max_steps, g_const, src_kind,
                          zsrc, mag, out_val, out_vdir, out_steps, out_trunc,
                          rec_row, rec_w, rec_r, rec_R)
        if nrec >= 0:
            break
        cap *= 4
    recs = (rec_row[:nrec], rec_w[:nrec], rec_r[:nrec], rec_R[:nrec])
    return out_val, out_vdir, out_steps, out_trunc, recs


def warmup(dim: int = 2):
    """Force JIT compilation so timed runs measure walks, not compilation."""
    from .geometry import BallField

    cf = compile_field(BallField(dim=dim, radius=1.0))
    keys = np.asarray([np.uint64(1)], dtype=np.uint64)
    x0 = np.zeros(dim)
    z = np.zeros(dim)
    z[0] = 0.5
    run_batch(0, keys, x0, 0.0, cf, 0.1, 1.0, 100, 0.0, 1, z, 1.0)
    run_batch(1, keys, x0, 1.0, cf, 0.1, 0.0, 100, 1.0, 0, z, 0.0)
