"""Radial kernels for screened walk-on-spheres steps.

All quantities refer to the operator  Lu = laplacian(u) - c*u  on an n-ball
of radius R with an absorbing (zero Dirichlet) wall:

* ``green(n, c, r, R)``      positive kernel G with L G = -delta_0, G(R) = 0,
                             evaluated at distance r from the ball centre.
* ``green_grad_radial``      dG/dr (negative: G decays toward the wall).
* ``norm_constant(n, c, R)`` total mass of the exit-point kernel, i.e. the
                             factor multiplying the spherical mean of the
                             boundary data in the mean-value identity.  It is
                             1 exactly at c = 0 and decays as c*R^2 grows.

With nu = n/2 - 1 and z = sqrt(c) r the radial ODE
    g'' + (n-1)/r g' - c g = 0
has the modified Bessel pair r^-nu I_nu(z), r^-nu K_nu(z); the unit-source
normalisation fixes the flux of G through a vanishing sphere at -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, ive, kve


def _validate_dim(dim: int) -> int:
    if not isinstance(dim, (int, np.integer)) or dim < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {dim!r}")
    return int(dim)


def sphere_area(dim: int, radius=1.0):
    """Surface measure of the (dim-1)-sphere of the given radius."""
    _validate_dim(dim)
    radius = np.asarray(radius, dtype=float)
    if np.any(radius <= 0):
        raise ValueError("radius must be positive")
    return 2.0 * math.pi ** (dim / 2.0) / math.gamma(dim / 2.0) * radius ** (dim - 1)


def ball_volume(dim: int, radius):
    """Lebesgue volume of the n-ball."""
    _validate_dim(dim)
    radius = np.asarray(radius, dtype=float)
    if np.any(radius <= 0):
        raise ValueError("radius must be positive")
    return math.pi ** (dim / 2.0) / math.gamma(dim / 2.0 + 1.0) * radius**dim


def _check_rR(r, radius):
    r = np.asarray(r, dtype=float)
    radius = np.asarray(radius, dtype=float)
    if np.any(radius <= 0):
        raise ValueError("ball radius must be positive")
    if np.any(r <= 0) or np.any(r >= radius):
        raise ValueError("green requires 0 < r < radius")
    return r, radius


def green(dim: int, screening: float, r, radius):
    """Kernel value G(r) on the ball of radius `radius`; vectorised in r, radius."""
    dim = _validate_dim(dim)
    if screening < 0:
        raise ValueError("screening must be >= 0")
    r, radius = _check_rR(r, radius)
    if screening == 0.0:
        if dim == 2:
            return np.log(radius / r) / (2.0 * math.pi)
        area1 = 2.0 * math.pi ** (dim / 2.0) / math.gamma(dim / 2.0)
        return (r ** (2 - dim) - radius ** (2 - dim)) / ((dim - 2) * area1)
    nu = dim / 2.0 - 1.0
    rc = math.sqrt(screening)
    z = rc * r
    zR = rc * radius
    # exponentially scaled Bessels keep every factor bounded
    ratio = kve(nu, zR) / ive(nu, zR)
    amp = screening ** (nu / 2.0) / (2.0 * math.pi) ** (dim / 2.0)
    val = kve(nu, z) * np.exp(-z) - ratio * ive(nu, z) * np.exp(z - 2.0 * zR)
    return amp * r ** (-nu) * val


def green_grad_radial(dim: int, screening: float, r, radius):
    """Radial derivative dG/dr; strictly negative on (0, radius)."""
    dim = _validate_dim(dim)
    if screening < 0:
        raise ValueError("screening must be >= 0")
    r, radius = _check_rR(r, radius)
    area1 = 2.0 * math.pi ** (dim / 2.0) / math.gamma(dim / 2.0)
    if screening == 0.0:
        return -(r ** (1 - dim)) / area1
    nu = dim / 2.0 - 1.0
    rc = math.sqrt(screening)
    z = rc * r
    zR = rc * radius
    ratio = kve(nu, zR) / ive(nu, zR)
    amp = screening ** (nu / 2.0) / (2.0 * math.pi) ** (dim / 2.0)
    val = kve(nu + 1.0, z) * np.exp(-z) + ratio * ive(nu + 1.0, z) * np.exp(z - 2.0 * zR)
    return -amp * rc * r ** (-nu) * val


def norm_constant(dim: int, screening: float, radius):
    """Mass of the exit kernel: 1 at c = 0, in (0, 1) for c > 0."""
    dim = _validate_dim(dim)
    if screening < 0:
        raise ValueError("screening must be >= 0")
    radius = np.asarray(radius, dtype=float)
    if np.any(radius <= 0):
        raise ValueError("ball radius must be positive")
    if screening == 0.0:
        return np.ones_like(radius) if radius.ndim else 1.0
    nu = dim / 2.0 - 1.0
    zR = math.sqrt(screening) * radius
    # (z/2)^nu e^-z / (Gamma(nu+1) I_nu(z) e^-z), in log space for the prefactor
    log_pref = nu * np.log(zR / 2.0) - zR - gammaln(nu + 1.0)
    return np.exp(log_pref) / ive(nu, zR)


def sample_sphere(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform unit vector on the (dim-1)-sphere."""
    _validate_dim(dim)
    while True:
        v = rng.standard_normal(dim)
        norm = np.sqrt(np.sum(v * v))
        if norm > 1e-12:
            return v / norm


@dataclass(frozen=True)
class ScreenedBallKernel:
    """Kernel bundle for a fixed ball: dimension, screening constant, radius."""

    dim: int
    screening: float
    radius: float

    def __post_init__(self):
        _validate_dim(self.dim)
        if self.screening < 0:
            raise ValueError("screening must be >= 0")
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    def green(self, r):
        return green(self.dim, self.screening, r, self.radius)

    def green_grad_radial(self, r):
        return green_grad_radial(self.dim, self.screening, r, self.radius)

    def norm_constant(self):
        return float(norm_constant(self.dim, self.screening, self.radius))

    def ball_volume(self):
        return float(ball_volume(self.dim, self.radius))
