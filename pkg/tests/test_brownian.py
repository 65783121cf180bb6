"""Brownian primitives: inverse-Gaussian variates, line hitting times, bridges."""

import math

import numpy as np
import pytest
from scipy import stats

from pdifmp_fpt.brownian import (
    BridgeSkeleton,
    LineBarrier,
    bessel_bridge_point,
    bridge_point_between,
    fpt_to_line,
    sample_inverse_gaussian,
)
from pdifmp_fpt.errors import DomainError

from conftest import fresh_rng


class TestInverseGaussian:
    def test_mean_matches_analytic(self):
        rng = fresh_rng(1, 1)
        draws = [sample_inverse_gaussian(1.0, 1.0, rng) for _ in range(100_000)]
        assert np.mean(draws) == pytest.approx(1.0, abs=0.02)

    def test_variance_matches_analytic(self):
        # var = mean^3 / shape
        rng = fresh_rng(1, 2)
        draws = [sample_inverse_gaussian(1.0, 1.0, rng) for _ in range(100_000)]
        assert np.var(draws) == pytest.approx(1.0, abs=0.05)

    def test_high_shape_concentration(self):
        rng = fresh_rng(1, 3)
        draws = [sample_inverse_gaussian(1.0, 1e6, rng) for _ in range(10_000)]
        assert all(abs(d - 1.0) < 0.01 for d in draws)

    def test_positive(self):
        rng = fresh_rng(1, 4)
        assert all(
            sample_inverse_gaussian(0.01, 0.5, rng) > 0.0 for _ in range(20_000)
        )

    def test_rejects_bad_parameters(self):
        rng = fresh_rng(1, 5)
        with pytest.raises(DomainError):
            sample_inverse_gaussian(-1.0, 1.0, rng)
        with pytest.raises(DomainError):
            sample_inverse_gaussian(1.0, 0.0, rng)


class TestFptToLine:
    def test_start_on_line_hits_immediately(self):
        rng = fresh_rng(2, 1)
        assert fpt_to_line(LineBarrier(0.0, 0.0, -1.0), rng) == 0.0

    def test_closing_line_mean(self):
        # gap 1, slope -1: IG(1, 1), mean 1
        rng = fresh_rng(2, 2)
        draws = [fpt_to_line(LineBarrier(0.0, 1.0, -1.0), rng) for _ in range(100_000)]
        assert np.mean(draws) == pytest.approx(1.0, abs=0.02)

    def test_receding_line_defect_mass(self):
        # finite with probability exp(-2ab) = exp(-2)
        rng = fresh_rng(2, 3)
        n = 100_000
        finite = sum(
            math.isfinite(fpt_to_line(LineBarrier(0.0, 1.0, 1.0), rng))
            for _ in range(n)
        )
        assert finite / n == pytest.approx(math.exp(-2.0), abs=0.01)

    def test_closing_line_matches_ig_law(self):
        # KS against the analytic IG(a/|b|, a^2) distribution
        rng = fresh_rng(2, 4)
        a, b = 1.5, -0.75
        draws = [fpt_to_line(LineBarrier(0.0, a, b), rng) for _ in range(10_000)]
        mean, shape = a / abs(b), a * a
        res = stats.kstest(draws, stats.invgauss(mean / shape, scale=shape).cdf)
        assert res.pvalue > 0.01

    def test_level_line_matches_levy_law(self):
        rng = fresh_rng(2, 5)
        a = 0.8
        draws = [fpt_to_line(LineBarrier(0.0, a, 0.0), rng) for _ in range(10_000)]
        res = stats.kstest(draws, stats.levy(scale=a * a).cdf)
        assert res.pvalue > 0.01

    def test_negative_gap_is_callers_bug(self):
        with pytest.raises(DomainError):
            LineBarrier(0.0, -0.1, -1.0)


class _FixedGauss:
    """Stub rng: fixed gauss output, never used uniforms."""

    def __init__(self, value=0.0):
        self.value = value

    def gauss(self, mu, sigma):
        return self.value


class TestBridgeSkeleton:
    def test_zero_noise_gives_drift_formula(self):
        # with l = 0 the point is threshold - |interpolated gap|
        skel = BridgeSkeleton(total=2.0, pin_start=1.5, pin_end=0.0)
        skel2, xi = bessel_bridge_point(skel, 1.0, threshold_at=0.5, rng=_FixedGauss())
        assert xi == pytest.approx(0.5 - 0.75)
        assert skel2.e_prev == 1.0

    def test_never_exceeds_threshold(self):
        rng = fresh_rng(3, 1)
        for trial in range(2_000):
            skel = BridgeSkeleton(total=1.0, pin_start=0.7, pin_end=0.0)
            e = 0.0
            for _ in range(3):
                e += 0.3 * rng.random()
                e = min(e, 1.0)
                skel, xi = bessel_bridge_point(skel, e, threshold_at=1.0, rng=rng)
                assert xi <= 1.0

    def test_endpoint_pins_are_exact(self):
        rng = fresh_rng(3, 2)
        skel = BridgeSkeleton(total=1.0, pin_start=0.4, pin_end=0.9)
        skel, xi = bessel_bridge_point(skel, 1.0, threshold_at=2.0, rng=rng)
        assert xi == pytest.approx(2.0 - 0.9)

    def test_out_of_range_advance_rejected(self):
        skel = BridgeSkeleton(total=1.0, pin_start=1.0, pin_end=0.0)
        rng = fresh_rng(3, 3)
        with pytest.raises(DomainError):
            bessel_bridge_point(skel, 1.5, threshold_at=0.0, rng=rng)

    def test_marginal_variance_of_bridge_coordinate(self):
        # coordinate variance at elapsed s in a length-L bridge is s(L-s)/L
        rng = fresh_rng(3, 4)
        L, s = 2.0, 0.7
        vals = [
            bridge_point_between((0.0, 0.0, 0.0), 0.0, (0.0, 0.0, 0.0), L, s, rng)[0]
            for _ in range(100_000)
        ]
        target = s * (L - s) / L
        se = target * math.sqrt(2.0 / len(vals))
        assert np.var(vals) == pytest.approx(target, abs=3.0 * se)

    def test_refinement_consistency(self):
        # inserting an intermediate point preserves the two-point law:
        # var at e2 and cov(e1, e2) match the analytic bridge covariance
        rng = fresh_rng(3, 5)
        L, e1, e2 = 1.0, 0.3, 0.8
        n = 100_000
        direct = np.empty(n)
        via = np.empty((n, 2))
        for k in range(n):
            direct[k] = bridge_point_between(
                (0.0, 0.0, 0.0), 0.0, (0.0, 0.0, 0.0), L, e2, rng
            )[0]
            l1 = bridge_point_between((0.0, 0.0, 0.0), 0.0, (0.0, 0.0, 0.0), L, e1, rng)
            l2 = bridge_point_between(l1, e1, (0.0, 0.0, 0.0), L, e2, rng)
            via[k] = (l1[0], l2[0])
        var_direct = e2 * (L - e2) / L
        se = var_direct * math.sqrt(2.0 / n)
        assert np.var(direct) == pytest.approx(var_direct, abs=3.0 * se)
        assert np.var(via[:, 1]) == pytest.approx(var_direct, abs=3.0 * se)
        cov_target = e1 * (L - e2) / L
        cov = np.cov(via[:, 0], via[:, 1])[0, 1]
        assert cov == pytest.approx(cov_target, abs=3.0 * se)
