"""Monte Carlo estimation of screened Poisson potentials on implicit
domains, and path planning by gradient ascent on those potentials.

The solver simulates walk-on-spheres processes against a distance field
(geometry, robot), weighting steps with ball Green's functions
(kernels).  The planner integrates normalized gradient ascent toward a
point source at the goal.  The bench subpackage reproduces the
disk-environment studies and the two-link validation as CSV/SVG
artifacts, exposed through the wos-nav command line tool.
"""

__version__ = "0.1.0"

from .geometry import (BallField, BoxField, DiskEnvironment, DistanceField,
                       PointSetField, UnionField, box_distance,
                       make_disk_environment, union)
from .kernels import (ball_volume, green, green_grad_radial, norm_constant,
                      sample_sphere, sphere_area)
from .planner import (PathResult, PlanConfig, discrete_frechet,
                      integrate_path, path_length, read_path_csv,
                      varadhan_transform, write_path_csv)
from .robot import (CollisionCurve, PlanarArm, collision_curve, fk,
                    ik_cspace_field, lipschitz_constant,
                    lipschitz_cspace_field, rr_arm, rr_ik,
                    task_space_distance, wrap_angle)
from .solver import (BoundarySpec, Estimate, SourceSpec, WalkConfig,
                     angle_error, solve_gradient, solve_value, walk_gradient,
                     walk_value)

__all__ = [
    "BallField", "BoundarySpec", "BoxField", "CollisionCurve",
    "DiskEnvironment", "DistanceField", "Estimate", "PathResult",
    "PlanarArm", "PlanConfig", "PointSetField", "SourceSpec", "UnionField",
    "WalkConfig", "angle_error", "ball_volume", "box_distance",
    "collision_curve", "discrete_frechet", "fk", "green",
    "green_grad_radial", "ik_cspace_field", "integrate_path",
    "lipschitz_constant", "lipschitz_cspace_field", "make_disk_environment",
    "norm_constant", "path_length", "read_path_csv", "rr_arm", "rr_ik",
    "sample_sphere", "solve_gradient", "solve_value", "sphere_area",
    "task_space_distance", "union", "varadhan_transform", "walk_gradient",
    "walk_value", "wrap_angle", "write_path_csv", "__version__",
]
