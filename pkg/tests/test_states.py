import math

import numpy as np
import pytest
from scipy import integrate

import udwkit as u


def weight_mass(state, lo=0.0, hi=None):
    hi = hi if hi is not None else u.truncation_radius(state, 1e-16)
    val, err = integrate.quad(lambda p: u.radial_weight(state, p), lo, hi,
                              epsabs=1e-13, epsrel=1e-12, limit=400)
    return val


class TestNormalization:
    @pytest.mark.parametrize("width,p_d", [(1.0, 0.0), (1.0, 3.0)])
    def test_unit_mass_reference_cases(self, width, p_d):
        state = u.GaussianState(width=width, mean_momentum=p_d)
        assert weight_mass(state) == pytest.approx(1.0, abs=1e-10)

    def test_unit_mass_randomized(self, rng):
        for _ in range(25):
            width = 10.0 ** rng.uniform(-2, 2)
            p_d = float(rng.uniform(0.0, 10.0))
            state = u.GaussianState(width=width, mean_momentum=p_d)
            assert weight_mass(state) == pytest.approx(1.0, abs=1e-10)

    def test_against_3d_monte_carlo(self, rng):
        # |psi(p)|^2 is a 3D normal with per-axis variance 1/L^2 centered on
        # p_D; the radial weight must reproduce its |p| distribution
        width, p_d = 1.3, 2.1
        state = u.GaussianState(width=width, mean_momentum=p_d)
        n = 400_000
        samples = rng.normal(0.0, 1.0 / width, (n, 3))
        samples[:, 2] += p_d
        radii = np.linalg.norm(samples, axis=1)
        for p0 in (1.5, 2.5, 4.0):
            mc = float(np.mean(radii <= p0))
            analytic = weight_mass(state, 0.0, p0)
            assert mc == pytest.approx(analytic, abs=3e-3)


class TestMoments:
    def test_second_moment_closed_form(self):
        # <p^2> = 3/L^2 for the rest-frame Gaussian (fixed from the moment
        # oracle: int p^4 e^{-L^2 p^2/2} / int p^2 e^{-L^2 p^2/2} = 3/L^2)
        for width in (0.5, 1.0, 4.0):
            state = u.GaussianState(width=width)
            hi = u.truncation_radius(state, 1e-16)
            num, _ = integrate.quad(lambda p: p * p * u.radial_weight(state, p),
                                    0.0, hi, epsabs=1e-14, epsrel=1e-12)
            assert num == pytest.approx(3.0 / width ** 2, rel=1e-9)


class TestShape:
    def test_rest_frame_reduces_to_isotropic_form(self):
        state = u.GaussianState(width=2.0)
        for p in (0.0, 0.3, 1.0):
            expected = (4.0 / (2 * math.pi)) ** 1.5 * 4 * math.pi * p * p \
                * math.exp(-2.0 * p * p)
            assert u.radial_weight(state, p) == pytest.approx(expected, rel=1e-14)

    def test_continuity_in_mean_momentum(self):
        at_rest = u.GaussianState(width=1.0)
        moving = u.GaussianState(width=1.0, mean_momentum=1e-6)
        worst = 0.0
        for p in np.geomspace(1e-2, 5.0, 40):
            w0 = u.radial_weight(at_rest, float(p))
            w1 = u.radial_weight(moving, float(p))
            if w0 > 1e-300:
                worst = max(worst, abs(w1 - w0) / w0)
        assert worst <= 1e-8

    def test_log_space_path_no_overflow(self):
        # L^2 p p_D up to 1e6 exercises the combined-exponent branch
        state = u.GaussianState(width=100.0, mean_momentum=10.0)
        for p in (5.0, 10.0, 15.0):
            val = u.radial_weight(state, p)  # x = 1e4 * p * 10 up to 1.5e6
            assert math.isfinite(val) and val >= 0.0
        assert u.radial_weight(state, 10.0) > 0.0

    def test_weight_mass_survives_log_space_path(self):
        state = u.GaussianState(width=40.0, mean_momentum=5.0)
        assert weight_mass(state) == pytest.approx(1.0, abs=1e-9)


class TestTruncation:
    def test_tail_bound_examples(self):
        for width, p_d in [(1.0, 0.0), (10.0, 0.0), (1.0, 2.0)]:
            state = u.GaussianState(width=width, mean_momentum=p_d)
            p_max = u.truncation_radius(state, 1e-20)
            tail, _ = integrate.quad(lambda p: u.radial_weight(state, p),
                                     p_max, p_max + 30.0 / width,
                                     epsabs=1e-40, epsrel=1e-10, limit=300)
            assert tail <= 1e-20
            assert p_max >= p_d

    def test_radius_scales_inversely_with_width(self):
        r1 = u.truncation_radius(u.GaussianState(width=1.0), 1e-20)
        r10 = u.truncation_radius(u.GaussianState(width=10.0), 1e-20)
        assert r10 == pytest.approx(r1 / 10.0, rel=1e-12)

    def test_tail_mass_domain(self):
        state = u.GaussianState(width=1.0)
        for bad in (0.0, 1.0, -0.5, 2.0):
            with pytest.raises(ValueError):
                u.truncation_radius(state, bad)


class TestValidation:
    def test_bad_state_rejected(self):
        with pytest.raises(ValueError):
            u.GaussianState(width=0.0)
        with pytest.raises(ValueError):
            u.GaussianState(width=1.0, mean_momentum=-1.0)

    def test_negative_momentum_rejected(self):
        with pytest.raises(ValueError):
            u.radial_weight(u.GaussianState(width=1.0), -0.1)

    def test_duck_typed_weight_protocol(self):
        assert isinstance(u.GaussianState(width=1.0), u.WeightFunction)
