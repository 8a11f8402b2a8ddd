"""Ball kernels: closed-form anchors, ODE residuals, oracle spot checks."""

import math

import numpy as np
import pytest

from wos_nav.kernels import (
    ScreenedBallKernel,
    ball_volume,
    green,
    green_grad_radial,
    norm_constant,
    sample_sphere,
    sphere_area,
)
from oracles import radial_green_oracle


def _green3_closed(c, r, R):
    # 3-d screened ball kernel: sinh(sqrt(c)(R-r)) / (4 pi r sinh(sqrt(c) R))
    rc = math.sqrt(c)
    return math.sinh(rc * (R - r)) / (4.0 * math.pi * r * math.sinh(rc * R))


def _grad3_closed(c, r, R):
    rc = math.sqrt(c)
    s = math.sinh(rc * R)
    return (
        -(rc * math.cosh(rc * (R - r)) * r + math.sinh(rc * (R - r)))
        / (4.0 * math.pi * r**2 * s)
    )


class TestMeasures:
    def test_sphere_area_anchors(self):
        assert sphere_area(2, 1.0) == pytest.approx(2.0 * math.pi, rel=1e-15)
        assert sphere_area(3, 1.0) == pytest.approx(4.0 * math.pi, rel=1e-15)
        assert sphere_area(3, 2.0) == pytest.approx(16.0 * math.pi, rel=1e-15)
        assert sphere_area(4, 1.0) == pytest.approx(2.0 * math.pi**2, rel=1e-15)

    def test_ball_volume_anchors(self):
        assert ball_volume(2, 1.0) == pytest.approx(math.pi, rel=1e-15)
        assert ball_volume(3, 1.0) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-15)
        assert ball_volume(4, 2.0) == pytest.approx(math.pi**2 / 2.0 * 16, rel=1e-15)

    def test_volume_area_consistency(self):
        # dV/dR = area(R), checked by central difference
        for dim in (2, 3, 4, 5):
            h = 1e-6
            dv = (ball_volume(dim, 1.0 + h) - ball_volume(dim, 1.0 - h)) / (2 * h)
            assert dv == pytest.approx(float(sphere_area(dim, 1.0)), rel=1e-8)

    def test_validation(self):
        with pytest.raises(ValueError):
            sphere_area(1, 1.0)
        with pytest.raises(ValueError):
            ball_volume(3, 0.0)


class TestLaplaceClosedForms:
    """screening = 0 must match the classical ball kernels exactly."""

    def test_dim2_log_kernel(self):
        for r, R in ((0.5, 1.0), (0.1, 2.0), (1.9, 2.0)):
            assert green(2, 0.0, r, R) == pytest.approx(
                math.log(R / r) / (2 * math.pi), rel=1e-14
            )
        assert float(green(2, 0.0, 0.5, 1.0)) == pytest.approx(
            math.log(2.0) / (2 * math.pi), rel=1e-15
        )

    def test_dim3_newtonian_kernel(self):
        for r, R in ((0.5, 1.0), (0.25, 4.0)):
            assert green(3, 0.0, r, R) == pytest.approx(
                (1 / r - 1 / R) / (4 * math.pi), rel=1e-14
            )
        assert float(green(3, 0.0, 0.5, 1.0)) == pytest.approx(
            1.0 / (4 * math.pi), rel=1e-15
        )

    def test_general_dim_kernel(self):
        for dim in (4, 5):
            area1 = float(sphere_area(dim, 1.0))
            for r, R in ((0.5, 1.0), (0.3, 1.5)):
                expect = (r ** (2 - dim) - R ** (2 - dim)) / ((dim - 2) * area1)
                assert green(dim, 0.0, r, R) == pytest.approx(expect, rel=1e-14)

    def test_gradient_closed_form(self):
        assert float(green_grad_radial(3, 0.0, 0.5, 1.0)) == pytest.approx(
            -1.0 / math.pi, rel=1e-15
        )
        for dim in (2, 3, 4, 5):
            area1 = float(sphere_area(dim, 1.0))
            for r in (0.2, 0.7):
                assert green_grad_radial(dim, 0.0, r, 1.0) == pytest.approx(
                    -(r ** (1 - dim)) / area1, rel=1e-14
                )

    def test_norm_constant_is_one(self):
        for dim in (2, 3, 4, 5):
            assert float(norm_constant(dim, 0.0, 1.0)) == 1.0


class TestScreenedClosedForms3d:
    """dim 3 has elementary hyperbolic forms; pin the Bessel route to them."""

    @pytest.mark.parametrize("c", [0.1, 1.0, 10.0])
    @pytest.mark.parametrize("R", [0.5, 1.0, 5.0])
    def test_green_matches(self, c, R):
        for frac in (0.05, 0.3, 0.7, 0.95):
            r = frac * R
            assert float(green(3, c, r, R)) == pytest.approx(
                _green3_closed(c, r, R), rel=1e-12
            )

    @pytest.mark.parametrize("c", [0.1, 1.0, 10.0])
    def test_grad_matches(self, c):
        for r in (0.1, 0.5, 0.9):
            assert float(green_grad_radial(3, c, r, 1.0)) == pytest.approx(
                _grad3_closed(c, r, 1.0), rel=1e-12
            )

    def test_norm_constant_hyperbolic(self):
        # C(3, c, R) = z / sinh(z) with z = sqrt(c) R
        for c, R in ((1.0, 1.0), (0.1, 2.0), (10.0, 0.5), (4.0, 3.0)):
            z = math.sqrt(c) * R
            assert float(norm_constant(3, c, R)) == pytest.approx(
                z / math.sinh(z), rel=1e-13
            )
        assert float(norm_constant(3, 1.0, 1.0)) == pytest.approx(
            1.0 / math.sinh(1.0), rel=1e-15
        )


class TestRadialODE:
    """g'' + (n-1)/r g' - c g = 0 away from the source, any dim and screening."""

    @pytest.mark.parametrize("dim", [2, 3, 4, 5])
    @pytest.mark.parametrize("c", [0.1, 1.0, 10.0])
    def test_residual_small(self, dim, c):
        R = 1.3
        h = 1e-4
        for r in (0.2, 0.5, 0.9, 1.2):
            gm, g0, gp = (float(green(dim, c, r + k * h, R)) for k in (-1, 0, 1))
            d2 = (gp - 2 * g0 + gm) / h**2
            d1 = (gp - gm) / (2 * h)
            resid = d2 + (dim - 1) / r * d1 - c * g0
            scale = abs(d2) + abs(c * g0) + 1e-300
            assert abs(resid) / scale < 1e-5

    @pytest.mark.parametrize("dim", [2, 3, 4, 5])
    def test_unit_source_flux(self, dim):
        # -area(S^{n-1}) r^{n-1} G'(r) -> 1 as r -> 0
        for c in (0.0, 1.0, 10.0):
            r = 1e-6
            flux = -float(sphere_area(dim, r)) * float(green_grad_radial(dim, c, r, 1.0))
            assert flux == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize("dim", [2, 3, 4, 5])
    def test_scaling_law(self, dim):
        # G_{c,R}(r) = s^{2-n} G_{c s^2, R/s}(r/s)
        s, c, R = 2.0, 3.0, 1.5
        for r in (0.2, 0.8, 1.4):
            lhs = float(green(dim, c, r, R))
            rhs = s ** (2 - dim) * float(green(dim, c * s * s, r / s, R / s))
            assert lhs == pytest.approx(rhs, rel=1e-12)


class TestShapeProperties:
    def test_positive_and_decreasing(self):
        rs = np.linspace(0.01, 0.999, 200)
        for dim in (2, 3, 4, 5):
            for c in (0.0, 0.5, 10.0):
                g = np.asarray(green(dim, c, rs, 1.0))
                dg = np.asarray(green_grad_radial(dim, c, rs, 1.0))
                assert np.all(g > 0)
                assert np.all(dg < 0)
                assert np.all(np.diff(g) < 0)

    def test_vanishes_at_wall(self):
        for dim in (2, 3, 5):
            v = float(green(dim, 1.0, 1.0 - 1e-12, 1.0))
            assert 0 < v < 1e-9

    def test_norm_constant_range_and_monotonicity(self):
        cs = [0.01, 0.1, 1.0, 10.0, 100.0]
        for dim in (2, 3, 4, 5):
            vals = [float(norm_constant(dim, c, 1.0)) for c in cs]
            assert all(0.0 < v < 1.0 for v in vals)
            assert all(a > b for a, b in zip(vals, vals[1:]))
            radii = [float(norm_constant(dim, 1.0, R)) for R in (0.5, 1.0, 2.0, 4.0)]
            assert all(a > b for a, b in zip(radii, radii[1:]))

    def test_screening_to_zero_limit(self):
        for dim in (2, 3, 4, 5):
            a = float(green(dim, 1e-14, 0.4, 1.0))
            b = float(green(dim, 0.0, 0.4, 1.0))
            assert a == pytest.approx(b, rel=1e-6)
            assert float(norm_constant(dim, 1e-14, 1.0)) == pytest.approx(1.0, rel=1e-9)

    def test_extreme_screening_stays_finite(self):
        # exponentially scaled Bessels must not overflow even at c R^2 ~ 1e6
        v = float(green(2, 1e6, 0.5, 1.0))
        assert np.isfinite(v) and v >= 0
        cnorm = float(norm_constant(4, 1e6, 1.0))
        assert 0 <= cnorm < 1e-100


class TestOracleSpotChecks:
    """Full 36-combination oracle sweep lives in the acceptance suite."""

    def test_dim2_screened_against_ode_oracle(self):
        ref = radial_green_oracle(2, 1.0, 1.0, np.array([0.3, 0.6, 0.9]))
        got_g = np.asarray(green(2, 1.0, np.array([0.3, 0.6, 0.9]), 1.0))
        got_d = np.asarray(green_grad_radial(2, 1.0, np.array([0.3, 0.6, 0.9]), 1.0))
        assert np.allclose(got_g, ref["green"], rtol=1e-6)
        assert np.allclose(got_d, ref["grad"], rtol=1e-6)
        assert float(norm_constant(2, 1.0, 1.0)) == pytest.approx(
            ref["norm"], rel=1e-6
        )

    def test_dim5_high_screening_against_ode_oracle(self):
        ref = radial_green_oracle(5, 10.0, 0.5, np.array([0.1, 0.25, 0.45]))
        got = np.asarray(green(5, 10.0, np.array([0.1, 0.25, 0.45]), 0.5))
        assert np.allclose(got, ref["green"], rtol=1e-6)


class TestValidation:
    def test_domain_errors(self):
        with pytest.raises(ValueError):
            green(3, 1.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            green(3, 1.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            green(3, 1.0, 1.5, 1.0)
        with pytest.raises(ValueError):
            green(3, -1.0, 0.5, 1.0)
        with pytest.raises(ValueError):
            green(1, 0.0, 0.5, 1.0)
        with pytest.raises(ValueError):
            green_grad_radial(3, 1.0, -0.5, 1.0)
        with pytest.raises(ValueError):
            norm_constant(3, 1.0, -2.0)

    def test_kernel_bundle(self):
        k = ScreenedBallKernel(3, 1.0, 1.0)
        assert k.green(0.5) == pytest.approx(float(green(3, 1.0, 0.5, 1.0)), rel=1e-15)
        assert k.norm_constant() == pytest.approx(1.0 / math.sinh(1.0), rel=1e-14)
        assert k.ball_volume() == pytest.approx(4 * math.pi / 3, rel=1e-14)
        with pytest.raises(ValueError):
            ScreenedBallKernel(3, -1.0, 1.0)
        with pytest.raises(ValueError):
            ScreenedBallKernel(3, 1.0, 0.0)


class TestSampleSphere:
    def test_unit_norm_and_isotropy(self):
        gen = np.random.default_rng(0)
        for dim in (2, 3, 5):
            pts = np.array([sample_sphere(dim, gen) for _ in range(20_000)])
            assert np.allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)
            # component means ~ 0, second moments ~ 1/dim
            se = 1.0 / math.sqrt(dim * len(pts))
            assert np.all(np.abs(pts.mean(axis=0)) < 6 * se)
            assert np.allclose((pts**2).mean(axis=0), 1.0 / dim, atol=0.02)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
