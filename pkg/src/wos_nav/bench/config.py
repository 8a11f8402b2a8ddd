"""Key-value config files for scenes and experiment specs.

Format: one `key = value` per line, `#` starts a comment, blank lines
ignored, later keys override earlier ones.  Values are kept as strings;
the as_* helpers coerce on access so error messages can name the key.

A scene file describes a domain for the solve/plan entry points:

    env = disk           # disk | rr
    k_r = 0.3
    dim = 2
    goal = 8 0

    env = rr             # two-link arm with a task-space point obstacle
    field = ik           # ik | lipschitz
    obstacle = 0 1.3
    n_col = 200
    q_start = 0.785 0.800
    q_goal = 2.042 0.200
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..geometry import DistanceField, make_disk_environment
from ..robot import (PlanarArm, collision_curve, ik_cspace_field,
                     lipschitz_cspace_field, rr_arm)


class ConfigError(ValueError):
    pass


def parse_config(source) -> dict:
    """Parse a config file path, or an iterable of lines, into a dict."""
    if isinstance(source, (str, bytes)):
        with open(source) as fh:
            lines = fh.readlines()
    else:
        lines = list(source)
    out = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        out[key] = value
    return out


def as_str(cfg: dict, key: str, default=None) -> str:
    if key not in cfg:
        if default is None:
            raise ConfigError(f"missing required key {key!r}")
        return default
    return cfg[key]


def as_float(cfg: dict, key: str, default=None) -> float:
    try:
        return float(as_str(cfg, key, None if default is None else str(default)))
    except ValueError as exc:
        raise ConfigError(f"key {key!r}: {exc}") from None


def as_int(cfg: dict, key: str, default=None) -> int:
    raw = as_str(cfg, key, None if default is None else str(default))
    try:
        return int(float(raw)) if ("e" in raw or "." in raw) else int(raw)
    except ValueError as exc:
        raise ConfigError(f"key {key!r}: {exc}") from None


def as_floats(cfg: dict, key: str, default=None) -> np.ndarray:
    raw = as_str(cfg, key, default)
    try:
        return np.array([float(tok) for tok in raw.split()])
    except ValueError as exc:
        raise ConfigError(f"key {key!r}: {exc}") from None


def as_ints(cfg: dict, key: str, default=None) -> list:
    vals = as_floats(cfg, key, default)
    return [int(round(v)) for v in vals]


@dataclass(frozen=True)
class Scene:
    """A resolved domain plus its conventional start/goal points."""

    env: str
    field: DistanceField
    start: np.ndarray
    goal: np.ndarray
    params: dict


def build_scene(cfg: dict) -> Scene:
    """Construct the domain described by a parsed scene config."""
    env = as_str(cfg, "env")
    if env == "disk":
        k_r = as_float(cfg, "k_r", 0.3)
        dim = as_int(cfg, "dim", 2)
        field = make_disk_environment(k_r, ambient_dim=dim)
        goal = np.zeros(dim)
        goal[0] = 8.0
        start = np.zeros(dim)
        start[0] = -8.0
        if "goal" in cfg:
            goal = as_floats(cfg, "goal")
        if "start" in cfg:
            start = as_floats(cfg, "start")
        return Scene(env=env, field=field, start=start, goal=goal,
                     params={"k_r": k_r, "dim": dim})
    if env == "rr":
        if "link_lengths" in cfg:
            arm = PlanarArm(tuple(as_floats(cfg, "link_lengths")),
                            tuple(as_floats(cfg, "q_upper")))
        else:
            arm = rr_arm()
        obstacle = as_floats(cfg, "obstacle", "0 1.3")
        field_kind = as_str(cfg, "field", "ik")
        if field_kind == "ik":
            curve = collision_curve(arm, obstacle, n_points=as_int(cfg, "n_col", 200))
            field = ik_cspace_field(curve, arm)
        elif field_kind == "lipschitz":
            field = lipschitz_cspace_field(arm, obstacle)
        else:
            raise ConfigError(f"unknown rr field kind {field_kind!r}")
        start = as_floats(cfg, "q_start", "0.785 0.800")
        goal = as_floats(cfg, "q_goal", "2.042 0.200")
        return Scene(env=env, field=field, start=start, goal=goal,
                     params={"obstacle": tuple(obstacle), "field": field_kind})
    raise ConfigError(f"unknown scene env {env!r}")
