"""Steer a two-link arm past a point obstacle in joint space.

The arm has unit links and joint limits |q0| <= 1.5*pi, |q1| <= pi.  A
task-space point obstacle maps to a one-dimensional collision curve in
joint space: every configuration that places the arm through the point.
Two distance fields around that curve drive the same planner:

  * curve field    - distance to the discretized collision curve,
  * Lipschitz field - task-space clearance divided by the arm's
    Lipschitz constant; conservative but needs no curve construction.

The demo plans a strongly screened (c = 5) and a harmonic (c = 0) path
on the curve field, then re-plans the harmonic path on the Lipschitz
field and reports the discrete Frechet distance between the two
harmonic paths — they agree to within a couple of step sizes.

Run:  python3 demos/arm_navigation.py [--walks N] [--seed S] [--out DIR]
"""

import argparse
import os

import numpy as np

from wos_nav import rng
from wos_nav.bench import svg
from wos_nav.planner import (PlanConfig, discrete_frechet, integrate_path,
                             write_path_csv)
from wos_nav.robot import (collision_curve, ik_cspace_field,
                           lipschitz_cspace_field, rr_arm)
from wos_nav.solver import WalkConfig

X_OBS = np.array([0.0, 1.3])
Q_START = np.array([0.785, 0.800])
Q_GOAL = np.array([2.042, 0.200])


def _plan(field, c, walks, seed, goal):
    walk = WalkConfig(epsilon=0.02, n_walks=walks, screening=c, seed=seed)
    cfg = PlanConfig(s_ub=0.1, max_iters=1000, walk=walk, goal=goal)
    return integrate_path(field, cfg, Q_START)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--walks", type=int, default=50_000,
                    help="walks per gradient estimate (default 50000)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="demos/out/arm_navigation")
    args = ap.parse_args(argv)

    arm = rr_arm()
    curve = collision_curve(arm, X_OBS)
    field_curve = ik_cspace_field(curve, arm)
    field_lip = lipschitz_cspace_field(arm, X_OBS)
    os.makedirs(args.out, exist_ok=True)

    print(f"obstacle at ({X_OBS[0]:g}, {X_OBS[1]:g}): collision curve has "
          f"{curve.points.shape[0]} configurations, arc length "
          f"{curve.arc_length:.3f}")
    print(f"clearance at start: curve field "
          f"{field_curve.distance(Q_START):.3f}, Lipschitz field "
          f"{field_lip.distance(Q_START):.3f} (conservative)")

    runs = [
        ("curve field, c=5", field_curve, 5.0, "path_curve_c5"),
        ("curve field, c=0", field_curve, 0.0, "path_curve_c0"),
        ("Lipschitz field, c=0", field_lip, 0.0, "path_lipschitz_c0"),
    ]
    paths = {}
    polylines = [{"label": "collision curve", "points": curve.points,
                  "color": "#aaaaaa"}]
    for i, (label, field, c, stem) in enumerate(runs):
        path = _plan(field, c, args.walks, rng.derive_seed(args.seed, i), Q_GOAL)
        paths[stem] = path
        fname = os.path.join(args.out, f"{stem}.csv")
        write_path_csv(path, field, fname)
        polylines.append({"label": label, "points": path.points})
        print(f"  {label:<22} {path.status:>9}: length {path.length:.3f} over "
              f"{path.points.shape[0] - 1} steps")

    frechet = discrete_frechet(paths["path_curve_c0"].points,
                               paths["path_lipschitz_c0"].points)
    print(f"harmonic paths, curve vs Lipschitz field: discrete Frechet "
          f"distance {frechet:.3f} (step size 0.1)")

    qu = arm.q_upper_arr
    box = np.array([[-qu[0], -qu[1]], [qu[0], -qu[1]], [qu[0], qu[1]],
                    [-qu[0], qu[1]], [-qu[0], -qu[1]]])
    polylines.insert(0, {"label": "joint limits", "points": box,
                         "color": "#000000"})
    fig = os.path.join(args.out, "arm_navigation.svg")
    svg.plot_paths(fig, polylines,
                   points=[{"xy": Q_START, "label": "start"},
                           {"xy": Q_GOAL, "label": "goal"}],
                   title="joint-space navigation around a collision curve")
    print(f"figure: {fig}")


if __name__ == "__main__":
    main()
