"""ECDF, two-sample KS, and Gaussian KDE."""

import json
import math

import numpy as np
import pytest

from pdifmp_fpt.stats import ComparisonReport, compare_samples, ecdf, kde_gaussian, ks_two_sample

from conftest import fresh_rng


class TestEcdf:
    def test_below_min_is_zero(self):
        assert ecdf([1.0, 2.0, 3.0], 0.5) == 0.0

    def test_at_max_is_one(self):
        assert ecdf([1.0, 2.0, 3.0], 3.0) == 1.0

    def test_interior_fraction(self):
        assert ecdf([1.0, 2.0, 3.0], 2.0) == pytest.approx(2.0 / 3.0)

    def test_monotone_in_x(self):
        rng = fresh_rng(30, 0)
        data = [rng.gauss(0, 1) for _ in range(200)]
        xs = sorted(rng.gauss(0, 1) for _ in range(50))
        values = [ecdf(data, x) for x in xs]
        assert all(a <= b for a, b in zip(values, values[1:]))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            ecdf([], 0.0)


class TestKsTwoSample:
    def test_identical_samples(self):
        d, p = ks_two_sample([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
        assert d == 0.0
        assert p == pytest.approx(1.0)

    def test_disjoint_supports(self):
        d, _ = ks_two_sample([0.0, 0.0], [1.0, 1.0])
        assert d == pytest.approx(1.0)

    def test_hand_computed_statistic(self):
        d, _ = ks_two_sample([1.0, 2.0], [1.5, 2.5])
        assert d == pytest.approx(0.5)

    def test_symmetry(self):
        rng = fresh_rng(31, 0)
        a = [rng.gauss(0, 1) for _ in range(400)]
        b = [rng.gauss(0.2, 1.1) for _ in range(300)]
        assert ks_two_sample(a, b) == ks_two_sample(b, a)

    def test_matches_scipy_asymptotic_form(self):
        from scipy.special import kolmogorov

        rng = fresh_rng(31, 1)
        a = [rng.gauss(0, 1) for _ in range(500)]
        b = [rng.gauss(0, 1) for _ in range(700)]
        d, p = ks_two_sample(a, b)
        n_eff = 500 * 700 / 1200
        assert p == pytest.approx(float(kolmogorov(math.sqrt(n_eff) * d)))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            ks_two_sample([], [1.0])


class TestKdeGaussian:
    def test_normal_density_at_zero(self):
        rng = np.random.default_rng(7)
        data = rng.standard_normal(100_000)
        grid = np.linspace(-5, 5, 501)
        dens = kde_gaussian(data, grid)
        at_zero = dens[250]
        assert at_zero == pytest.approx(1.0 / math.sqrt(2 * math.pi), abs=0.01)

    def test_nonnegative_and_normalized(self):
        rng = np.random.default_rng(8)
        data = rng.standard_normal(20_000)
        grid = np.linspace(-6, 6, 601)
        dens = kde_gaussian(data, grid)
        assert np.all(dens >= 0.0)
        trapezoid = getattr(np, "trapezoid", np.trapz)
        assert trapezoid(dens, grid) == pytest.approx(1.0, abs=0.01)

    def test_degenerate_sample_rejected(self):
        with pytest.raises(ValueError):
            kde_gaussian([1.0], np.linspace(0, 2, 10))
        with pytest.raises(ValueError):
            kde_gaussian([1.0, 1.0, 1.0], np.linspace(0, 2, 10))


class TestComparisonReport:
    def test_round_trips_through_json(self):
        rng = fresh_rng(32, 0)
        a = [rng.gauss(0, 1) for _ in range(100)]
        b = [rng.gauss(0, 1) for _ in range(150)]
        rep = compare_samples(a, b, settings={"tag": "unit"})
        doc = json.loads(rep.to_json())
        assert doc["n1"] == 100
        assert doc["n2"] == 150
        assert 0.0 <= doc["ks_d"] <= 1.0
        assert 0.0 <= doc["p_value"] <= 1.0
        assert doc["settings"]["tag"] == "unit"
        rebuilt = ComparisonReport(**doc)
        assert rebuilt == rep
