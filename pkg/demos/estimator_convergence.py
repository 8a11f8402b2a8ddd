"""Watch the gradient estimate sharpen as the walk budget grows.

At a fixed disk-world point, the planner only needs the *direction* of
the potential's gradient.  This demo estimates that direction with
increasing walk budgets and scores each estimate by its angle to a
high-budget reference of the same estimator.  The scene drives the
potential from unit boundary data so every walk contributes signal; the
mean angle error then decays like 1/sqrt(n_walks), and the printed
log-log slope lands near -0.5 (short grids fit it slightly steep).

Run:  python3 demos/estimator_convergence.py [--seed S] [--out DIR]
"""

import argparse
import math
import os

import numpy as np

from wos_nav import rng
from wos_nav.bench import fit_loglog_slope, svg
from wos_nav.geometry import make_disk_environment
from wos_nav.solver import BoundarySpec, SourceSpec, WalkConfig, solve_gradient

N_GRID = (1_000, 4_000, 16_000, 64_000, 256_000)
N_SEEDS = 8
N_REFERENCE = 2_000_000


def _angle(a, b):
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0:
        return math.pi / 2
    return float(np.arccos(np.clip(np.dot(a, b) / (na * nb), -1.0, 1.0)))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="demos/out/estimator_convergence")
    args = ap.parse_args(argv)

    field = make_disk_environment(0.3)
    point = np.array([-8.0, 0.0])
    bc = BoundarySpec(1.0)
    src = SourceSpec.none()
    os.makedirs(args.out, exist_ok=True)

    def grad(n, seed):
        cfg = WalkConfig(epsilon=0.01, n_walks=n, screening=1.0, seed=seed)
        return solve_gradient(field, bc, src, cfg, point)

    print(f"reference: {N_REFERENCE} walks at point "
          f"({point[0]:g}, {point[1]:g})")
    ref = grad(N_REFERENCE, rng.derive_seed(args.seed, 999)).mean

    xs, ys = [], []
    print(f"{'n_walks':>9}  {'mean angle error (rad)':>24}")
    for n in N_GRID:
        errs = [_angle(grad(n, rng.derive_seed(args.seed, k)).mean, ref)
                for k in range(N_SEEDS)]
        xs.extend([n] * N_SEEDS)
        ys.extend(errs)
        print(f"{n:>9}  {np.mean(errs):>24.5f}")

    x_arr, y_arr = np.array(xs, float), np.maximum(np.array(ys), 1e-12)
    mean_per_n = [y_arr[x_arr == n].mean() for n in N_GRID]
    slope = fit_loglog_slope(N_GRID, mean_per_n)
    print(f"fitted log-log slope {slope:+.3f} (expect about -0.5)")

    fig = os.path.join(args.out, "estimator_convergence.svg")
    svg.plot_xy(fig, [{"label": "angle error", "x": x_arr, "y": y_arr,
                       "scatter": True}],
                x_label="n_walks", y_label="angle error (rad)",
                title="gradient direction error vs walk budget",
                xlog=True, ylog=True, mean_lines=True)
    print(f"figure: {fig}")


if __name__ == "__main__":
    main()
