"""Planar serial arms and the configuration-space fields they induce.

Two constructions turn an arm plus a point obstacle into a distance field
over joint space.  The Lipschitz route divides workspace clearance by a
bound on how fast any arm point can move per unit joint motion; it needs no
precomputation and works for any link count.  The inverse-kinematics route
samples the collision set (a curve for a two-link arm) densely and measures
distance to the samples; it is sharper but specific to two links.

Angles are radians; joint states are plain float arrays, one entry per
joint, measured relative to the previous link.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import BoxField, DistanceField, PointSetField, UnionField, union


def wrap_angle(a):
    """Wrap to [-pi, pi]; either sign may come back for the half-turn."""
    a = np.asarray(a, dtype=float)
    out = np.arctan2(np.sin(a), np.cos(a))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class PlanarArm:
    """Revolute chain in the plane, base pinned at the origin.

    `q_upper` holds symmetric joint limits: joint i ranges over
    [-q_upper[i], q_upper[i]].
    """

    link_lengths: tuple
    q_upper: tuple

    def __post_init__(self):
        ls = tuple(float(v) for v in self.link_lengths)
        qs = tuple(float(v) for v in self.q_upper)
        if len(ls) == 0 or len(ls) != len(qs):
            raise ValueError("need one joint limit per link")
        if any(v <= 0 for v in ls) or any(v <= 0 for v in qs):
            raise ValueError("link lengths and joint limits must be positive")
        object.__setattr__(self, "link_lengths", ls)
        object.__setattr__(self, "q_upper", qs)

    @property
    def n_joints(self):
        return len(self.link_lengths)

    @property
    def q_lower_arr(self):
        return -np.asarray(self.q_upper, dtype=float)

    @property
    def q_upper_arr(self):
        return np.asarray(self.q_upper, dtype=float)

    def joint_box(self) -> BoxField:
        return BoxField(self.q_lower_arr, self.q_upper_arr)


def rr_arm() -> PlanarArm:
    """Unit-link two-revolute arm with limits (3 pi / 2, pi)."""
    return PlanarArm(link_lengths=(1.0, 1.0), q_upper=(1.5 * math.pi, math.pi))


def fk(arm: PlanarArm, q):
    """Joint positions for configuration(s) q.

    q of shape (N,) gives an (N + 1, 2) array of points starting at the
    base; shape (m, N) gives (m, N + 1, 2).
    """
    q = np.asarray(q, dtype=float)
    single = q.ndim == 1
    qs = q[None, :] if single else q
    if qs.ndim != 2 or qs.shape[1] != arm.n_joints:
        raise ValueError(f"expected {arm.n_joints} joint values, got shape {q.shape}")
    theta = np.cumsum(qs, axis=1)
    ls = np.asarray(arm.link_lengths)
    steps = ls[None, :, None] * np.stack([np.cos(theta), np.sin(theta)], axis=2)
    pts = np.zeros((qs.shape[0], arm.n_joints + 1, 2))
    pts[:, 1:, :] = np.cumsum(steps, axis=1)
    return pts[0] if single else pts


def _point_segment_distance(p, a, b):
    # p: (m, 2) broadcast against segments a->b: (m, 2)
    ab = b - a
    ap = p - a
    denom = np.sum(ab * ab, axis=-1)
    t = np.where(denom > 0, np.sum(ap * ab, axis=-1) / np.where(denom > 0, denom, 1.0), 0.0)
    t = np.clip(t, 0.0, 1.0)
    closest = a + t[..., None] * ab
    return np.sqrt(np.sum((p - closest) ** 2, axis=-1))


def task_space_distance(arm: PlanarArm, q, x_obs):
    """Smallest distance from the obstacle point to any link segment."""
    x_obs = np.asarray(x_obs, dtype=float)
    q = np.asarray(q, dtype=float)
    single = q.ndim == 1
    pts = fk(arm, q if not single else q[None, :])
    a = pts[:, :-1, :]
    b = pts[:, 1:, :]
    d = _point_segment_distance(x_obs[None, None, :], a, b).min(axis=1)
    return float(d[0]) if single else d


def lipschitz_constant(arm: PlanarArm) -> float:
    """Bound K with |p(q) - p(q')| <= K |q - q'| for every arm point p.

    Turning joint j moves any material point by at most the length of arm
    beyond joint j, so the per-joint sensitivities are the suffix sums of
    the link lengths and K is their Euclidean norm.
    """
    ls = np.asarray(arm.link_lengths, dtype=float)
    suffix = np.cumsum(ls[::-1])[::-1]
    return float(np.sqrt(np.sum(suffix**2)))


@dataclass(frozen=True)
class LipschitzArmField(DistanceField):
    """Joint-space clearance bound: min of the joint box and workspace
    clearance scaled by 1/K.  Underestimates the true free distance."""

    arm: PlanarArm
    x_obs: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x_obs, dtype=float)
        if x.shape != (2,):
            raise ValueError("x_obs must be a planar point")
        object.__setattr__(self, "x_obs", x)
        object.__setattr__(self, "dim", self.arm.n_joints)
        object.__setattr__(self, "_k", lipschitz_constant(self.arm))
        object.__setattr__(self, "_box", self.arm.joint_box())

    @property
    def k(self) -> float:
        return self._k

    def _distance(self, pts):
        d_box = self._box._distance(pts)
        d_task = task_space_distance(self.arm, pts, self.x_obs)
        return np.minimum(d_box, d_task / self._k)


def lipschitz_cspace_field(arm: PlanarArm, x_obs) -> LipschitzArmField:
    return LipschitzArmField(arm=arm, x_obs=np.asarray(x_obs, dtype=float))


def rr_ik(arm: PlanarArm, x):
    """Joint solutions placing a two-link arm's tip at x.

    Returns a list of configurations (both elbow branches when distinct),
    wrapped to (-pi, pi] and filtered by the joint limits.
    """
    if arm.n_joints != 2:
        raise ValueError("inverse kinematics implemented for two links only")
    l1, l2 = arm.link_lengths
    x = np.asarray(x, dtype=float)
    rho2 = float(x[0] ** 2 + x[1] ** 2)
    cos_q2 = (rho2 - l1 * l1 - l2 * l2) / (2.0 * l1 * l2)
    if abs(cos_q2) > 1.0 + 1e-12:
        return []
    cos_q2 = min(1.0, max(-1.0, cos_q2))
    base = math.atan2(x[1], x[0])
    sols = []
    for q2 in {math.acos(cos_q2), -math.acos(cos_q2)}:
        q1 = wrap_angle(base - math.atan2(l2 * math.sin(q2), l1 + l2 * math.cos(q2)))
        q = np.array([q1, wrap_angle(q2)])
        if np.all(np.abs(q) <= arm.q_upper_arr + 1e-12):
            sols.append(q)
    return sols


@dataclass(frozen=True)
class CollisionCurve:
    """Equidistant samples of the joint-space touch set for a point obstacle."""

    points: np.ndarray  # (n, 2)
    arc_length: float
    min_gap: float
    mean_gap: float
    max_gap: float


def _empty_curve() -> CollisionCurve:
    pts = np.zeros((0, 2))
    return CollisionCurve(points=pts, arc_length=0.0, min_gap=0.0, mean_gap=0.0, max_gap=0.0)


def _touch_q2(arm: PlanarArm, q1, x_obs):
    """Second joint angle putting link 2 through x_obs at given q1 values."""
    l1 = arm.link_lengths[0]
    q1 = np.asarray(q1, dtype=float)
    p1x = l1 * np.cos(q1)
    p1y = l1 * np.sin(q1)
    return wrap_angle(np.arctan2(x_obs[1] - p1y, x_obs[0] - p1x) - q1)


def collision_curve(arm: PlanarArm, x_obs, n_points: int = 200, n_march: int = 20000) -> CollisionCurve:
    """Sample the set of configurations where the arm touches x_obs.

    Only the second-link touch set is handled, which requires the obstacle
    to sit beyond the first link's sweep (|x_obs| > l1); closer obstacles
    make the touch set two-dimensional and raise ValueError.  An obstacle
    out of reach yields an empty curve.  The principal band of first-joint
    angles is marched densely, resampled to n_points equidistant points,
    and each resampled point is projected back onto the exact curve.
    """
    if arm.n_joints != 2:
        raise ValueError("collision curve implemented for two links only")
    x_obs = np.asarray(x_obs, dtype=float)
    l1, l2 = arm.link_lengths
    rho = float(np.hypot(x_obs[0], x_obs[1]))
    if rho >= l1 + l2:
        return _empty_curve()
    if rho <= l1:
        raise ValueError("obstacle within first-link sweep: touch set is not a curve")

    # link 2 reaches x_obs iff |x_obs - p1| <= l2, a band of first-joint angles
    cos_half = (rho * rho + l1 * l1 - l2 * l2) / (2.0 * rho * l1)
    if cos_half > 1.0:
        return _empty_curve()
    beta = math.acos(max(-1.0, cos_half))
    theta_o = math.atan2(x_obs[1], x_obs[0])

    q1 = np.linspace(theta_o - beta, theta_o + beta, n_march)
    q2 = _touch_q2(arm, q1, x_obs)
    ok = (np.abs(q1) <= arm.q_upper[0]) & (np.abs(q2) <= arm.q_upper[1])
    q1, q2 = q1[ok], q2[ok]
    if q1.size < 2:
        return _empty_curve()

    # split where wrapping makes q2 jump, then resample each piece by arc length
    jumps = np.where(np.abs(np.diff(q2)) > math.pi)[0]
    pieces = np.split(np.column_stack([q1, q2]), jumps + 1)
    pieces = [p for p in pieces if p.shape[0] >= 2]
    seg = np.concatenate([np.sqrt(np.sum(np.diff(p, axis=0) ** 2, axis=1)) for p in pieces])
    total = float(seg.sum())

    # distribute sample count over pieces proportionally to their length
    lengths = [float(np.sqrt(np.sum(np.diff(p, axis=0) ** 2, axis=1)).sum()) for p in pieces]
    counts = [max(2, int(round(n_points * L / total))) for L in lengths]
    while sum(counts) > n_points:
        counts[int(np.argmax(counts))] -= 1
    while sum(counts) < n_points:
        counts[int(np.argmax(lengths))] += 1

    out = []
    for p, cnt in zip(pieces, counts):
        d = np.concatenate([[0.0], np.cumsum(np.sqrt(np.sum(np.diff(p, axis=0) ** 2, axis=1)))])
        s = np.linspace(0.0, d[-1], cnt)
        q1_new = np.interp(s, d, p[:, 0])
        q2_new = _touch_q2(arm, q1_new, x_obs)  # exact re-projection
        out.append(np.column_stack([q1_new, q2_new]))
    pts = np.concatenate(out, axis=0)

    gaps = np.concatenate(
        [np.sqrt(np.sum(np.diff(block, axis=0) ** 2, axis=1)) for block in out]
    )
    return CollisionCurve(
        points=pts,
        arc_length=total,
        min_gap=float(gaps.min()),
        mean_gap=float(gaps.mean()),
        max_gap=float(gaps.max()),
    )


def ik_cspace_field(curve: CollisionCurve, bounds) -> UnionField:
    """Joint-space field from a sampled touch curve plus the joint box.

    bounds is a BoxField, or an arm whose joint_box() supplies one.  An
    empty curve (unreachable obstacle) leaves only the box term.
    """
    box = bounds.joint_box() if isinstance(bounds, PlanarArm) else bounds
    if curve.points.shape[0] == 0:
        return union(box)
    return union(box, PointSetField(curve.points))
