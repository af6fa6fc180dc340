import numpy as np
import pytest

from seqalign.polytope import AlignmentPath, band_indicator, path_to_matrix
from seqalign.priors import (
    PriorConfig,
    band_gradient,
    band_penalty,
    duration_gradient,
    duration_penalty,
)


def finite_difference(f, y, h=1e-6):
    g = np.zeros_like(y)
    for idx in np.ndindex(y.shape):
        up, down = y.copy(), y.copy()
        up[idx] += h
        down[idx] -= h
        g[idx] = (f(up) - f(down)) / (2 * h)
    return g


class TestDurationPenalty:
    def test_exact_durations_cost_nothing(self):
        y = path_to_matrix(AlignmentPath(np.array([0, 0, 1, 1]), j_count=2))
        cfg = PriorConfig(mu=2.0, sigma=1.0)
        assert duration_penalty(y, cfg) == 0.0

    def test_hand_computed_value(self):
        # Durations (2, 1) against mu=1.5: 2 * 0.25 / 2 = 0.25.
        y = path_to_matrix(AlignmentPath(np.array([0, 0, 1]), j_count=2))
        cfg = PriorConfig(mu=1.5, sigma=1.0)
        assert duration_penalty(y, cfg) == pytest.approx(0.25)

    def test_huge_sigma_switches_prior_off(self):
        rng = np.random.default_rng(0)
        y = rng.random((3, 7))
        cfg = PriorConfig(mu=2.0, sigma=1e9)
        assert duration_penalty(y, cfg) <= 1e-12

    def test_vector_mu(self):
        y = path_to_matrix(AlignmentPath(np.array([0, 0, 1]), j_count=2))
        cfg = PriorConfig(mu=np.array([2.0, 1.0]), sigma=1.0)
        assert duration_penalty(y, cfg) == 0.0

    def test_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(1)
        cfg = PriorConfig(mu=1.7, sigma=0.8)
        y = rng.random((3, 5))
        g = duration_gradient(y, cfg)
        fd = finite_difference(lambda m: duration_penalty(m, cfg), y)
        np.testing.assert_allclose(g, fd, rtol=1e-6, atol=1e-8)

    def test_validation(self):
        with pytest.raises(ValueError):
            PriorConfig(mu=1.0, sigma=0.0)
        with pytest.raises(ValueError):
            PriorConfig(mu=-1.0, sigma=1.0)
        with pytest.raises(ValueError):
            PriorConfig(mu=1.0, sigma=1.0, alpha=-0.1)


class TestBandPenalty:
    def test_in_band_path_costs_nothing(self):
        band = band_indicator(3, 3, beta=0.5)
        y = np.eye(3)
        assert band_penalty(y, band, alpha=2.0) == 0.0

    def test_full_band_always_zero(self):
        rng = np.random.default_rng(2)
        band = band_indicator(3, 6, beta=1.0)
        assert band_penalty(rng.random((3, 6)), band, alpha=5.0) == 0.0

    def test_counts_outside_assignments(self):
        band = band_indicator(3, 6, beta=0.0)
        path = AlignmentPath(np.array([0, 0, 0, 1, 2, 2]), j_count=3)
        y = path_to_matrix(path)
        outside = int(np.sum(band.y_c * y))
        value = band_penalty(y, band, alpha=2.0)
        assert value == pytest.approx(2.0 * outside)
        assert value / 2.0 == int(value / 2.0)  # integer count for binary Y

    def test_gradient_is_constant_matrix(self):
        rng = np.random.default_rng(3)
        band = band_indicator(2, 5, beta=0.2)
        y = rng.random((2, 5))
        g = band_gradient(y, band, alpha=0.7)
        np.testing.assert_array_equal(g, 0.7 * band.y_c)
        fd = finite_difference(lambda m: band_penalty(m, band, 0.7), y)
        np.testing.assert_allclose(g, fd, rtol=1e-6, atol=1e-8)

    def test_non_negative_and_convex_along_segments(self):
        rng = np.random.default_rng(4)
        band = band_indicator(3, 6, beta=0.1)
        cfg = PriorConfig(mu=2.0, sigma=1.5)
        for _ in range(20):
            a, b = rng.random((2, 3, 6))
            mid = 0.5 * (a + b)
            for f in (
                lambda m: duration_penalty(m, cfg),
                lambda m: band_penalty(m, band, 0.3),
            ):
                assert f(a) >= 0 and f(b) >= 0
                assert f(mid) <= 0.5 * (f(a) + f(b)) + 1e-12
