"""Implicit free-space descriptions used by the walk engine.

A field maps a point (or a batch of points) to a conservative distance to
the nearest forbidden region: positive strictly inside the free space,
<= 0 on or beyond its boundary.  Exact fields return the true distance;
approximate fields (robot clearance bounds, sampled collision sets) must
underestimate it, which keeps every sphere the walker jumps on empty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field

import numpy as np

DISK_OUTER_RADIUS = 10.0


def _as_points(x, dim):
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    pts = x[None, :] if single else x
    if pts.ndim != 2 or pts.shape[1] != dim:
        raise ValueError(f"expected points of dimension {dim}, got shape {x.shape}")
    return pts, single


class DistanceField:
    """Base class; subclasses set `dim` and implement `_distance(pts)`."""

    dim: int

    def distance(self, x):
        """Distance at x; accepts shape (dim,) -> float or (m, dim) -> (m,)."""
        pts, single = _as_points(x, self.dim)
        d = self._distance(pts)
        return float(d[0]) if single else d

    def _distance(self, pts):
        raise NotImplementedError

    def closest_boundary_point(self, x):
        """Projection of x onto the boundary, or None when unavailable."""
        return None


@dataclass(frozen=True)
class BallField(DistanceField):
    """Free space inside a ball."""

    dim: int
    radius: float
    center: np.ndarray | None = None

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        c = np.zeros(self.dim) if self.center is None else np.asarray(self.center, float)
        if c.shape != (self.dim,):
            raise ValueError("center must have shape (dim,)")
        object.__setattr__(self, "center", c)

    def _distance(self, pts):
        return self.radius - np.sqrt(np.sum((pts - self.center) ** 2, axis=1))

    def closest_boundary_point(self, x):
        x = np.asarray(x, dtype=float)
        v = x - self.center
        n = np.linalg.norm(v)
        if n < 1e-300:
            v = np.zeros(self.dim)
            v[0] = 1.0
            n = 1.0
        return self.center + v * (self.radius / n)


@dataclass(frozen=True)
class BoxField(DistanceField):
    """Axis-aligned box; value is the distance to the nearest face along an
    axis (negative outside)."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=float)
        hi = np.asarray(self.upper, dtype=float)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError("lower/upper must be 1-d arrays of equal length")
        if np.any(hi <= lo):
            raise ValueError("upper must exceed lower on every axis")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        object.__setattr__(self, "dim", lo.size)

    def _distance(self, pts):
        return np.minimum(pts - self.lower, self.upper - pts).min(axis=1)


def box_distance(q, lower, upper):
    """Functional form of BoxField.distance."""
    return BoxField(np.asarray(lower, float), np.asarray(upper, float)).distance(q)


@dataclass(frozen=True)
class PointSetField(DistanceField):
    """Distance to a finite point set (e.g. a sampled collision curve)."""

    points: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.points, dtype=float)
        if p.ndim != 2 or p.shape[0] == 0:
            raise ValueError("points must be a non-empty (k, dim) array")
        object.__setattr__(self, "points", p)
        object.__setattr__(self, "dim", p.shape[1])

    def _distance(self, pts):
        d2 = np.sum((pts[:, None, :] - self.points[None, :, :]) ** 2, axis=2)
        return np.sqrt(d2.min(axis=1))


@dataclass(frozen=True)
class UnionField(DistanceField):
    """Free space common to several fields: pointwise minimum."""

    members: tuple

    def __post_init__(self):
        if len(self.members) == 0:
            raise ValueError("union needs at least one member")
        dims = {f.dim for f in self.members}
        if len(dims) != 1:
            raise ValueError(f"member dimensions differ: {sorted(dims)}")
        object.__setattr__(self, "members", tuple(self.members))
        object.__setattr__(self, "dim", self.members[0].dim)

    def _distance(self, pts):
        d = self.members[0]._distance(pts)
        for f in self.members[1:]:
            np.minimum(d, f._distance(pts), out=d)
        return d


def union(*fields) -> UnionField:
    return UnionField(tuple(fields))


@dataclass(frozen=True)
class DiskEnvironment(DistanceField):
    """Circular world of radius 10 with two interior disk obstacles.

    The upper obstacle has radius r_u = k_r * 10 centred at (0, r_u); the
    lower one half that size at (0, -r_u/2); they meet the origin from both
    sides, leaving two passages around the centre.  In ambient dimension
    above 2 the obstacles extrude along the extra axes: only the first two
    coordinates enter the distance.
    """

    k_r: float
    dim: int = 2
    r_outer: float = dataclass_field(default=DISK_OUTER_RADIUS, init=False)

    def __post_init__(self):
        if not (0.0 < self.k_r < 1.0):
            raise ValueError("k_r must lie in (0, 1)")
        if self.dim < 2:
            raise ValueError("ambient dimension must be >= 2")

    @property
    def ambient_dim(self):
        return self.dim

    @property
    def r_upper(self):
        return self.k_r * self.r_outer

    @property
    def r_lower(self):
        return self.k_r * self.r_outer / 2.0

    @property
    def center_upper(self):
        return np.array([0.0, self.r_upper])

    @property
    def center_lower(self):
        return np.array([0.0, -self.r_lower])

    def _distance(self, pts):
        xy = pts[:, :2]
        rad = np.sqrt(np.sum(xy * xy, axis=1))
        d = self.r_outer - rad
        cu = self.center_upper
        cl = self.center_lower
        du = np.sqrt((xy[:, 0] - cu[0]) ** 2 + (xy[:, 1] - cu[1]) ** 2) - self.r_upper
        dl = np.sqrt((xy[:, 0] - cl[0]) ** 2 + (xy[:, 1] - cl[1]) ** 2) - self.r_lower
        return np.minimum(d, np.minimum(du, dl))

    def closest_boundary_point(self, x):
        x = np.asarray(x, dtype=float)
        xy = x[:2]
        feats = [
            (self.r_outer - np.linalg.norm(xy), np.zeros(2), self.r_outer),
            (np.linalg.norm(xy - self.center_upper) - self.r_upper, self.center_upper, self.r_upper),
            (np.linalg.norm(xy - self.center_lower) - self.r_lower, self.center_lower, self.r_lower),
        ]
        _, center, radius = min(feats, key=lambda t: t[0])
        v = xy - center
        n = np.linalg.norm(v)
        if n < 1e-300:
            v = np.array([1.0, 0.0])
            n = 1.0
        out = x.copy()
        out[:2] = center + v * (radius / n)
        return out


def make_disk_environment(k_r: float, ambient_dim: int = 2) -> DiskEnvironment:
    """Disk world with obstacle scale k_r in (0, 1)."""
    return DiskEnvironment(k_r=float(k_r), dim=int(ambient_dim))
