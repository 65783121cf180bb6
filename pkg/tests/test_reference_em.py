"""Euler-Maruyama baseline behavior."""

import math

import numpy as np
import pytest

from pdifmp_fpt.errors import ModelEvaluationError
from pdifmp_fpt.model import HybridState, PDifMPModel, Threshold, catalog_example1
from pdifmp_fpt.reference_em import run_em_batch, simulate_em_fpt
from pdifmp_fpt.transform import GirsanovData

from conftest import fresh_rng, make_zero_drift_model


def make_deterministic_model():
    """mu = 1, sigma = 0 (bypassing construction checks), beta = 1 - t, y0 = -1."""
    zero = lambda t, x, z: 0.0
    m = PDifMPModel(
        mu=lambda t, y, z: 1.0,
        sigma=lambda t, y, z: 1.0,
        jump_rate=1e-12,
        jump_size=zero,
        kernel_sampler=lambda u, s: s.z,
        threshold=Threshold.linear(1.0, -1.0),
        initial=HybridState(-1.0, 1.0),
        girsanov=GirsanovData(
            F=lambda t, y, z: y,
            F_inverse=lambda t, x, z: x,
            alpha=lambda t, x, z: 1.0,
            alpha_dx=zero,
            A=lambda t, x, z: x,
            A_dt=zero,
            kappa=1.5,
            kappa2=0.5,
            A_plus=1.0,
        ),
    )
    object.__setattr__(m, "sigma", lambda t, y, z: 0.0)
    return m


class TestSimulateEmFpt:
    @pytest.mark.parametrize("h", [1e-2, 1e-3])
    def test_deterministic_crossing_time(self, h):
        # y = -1 + t meets 1 - t at t = 1
        m = make_deterministic_model()
        s = simulate_em_fpt(m, 3.0, h, fresh_rng(70, 0))
        assert s.tau == pytest.approx(1.0, abs=h)
        assert not s.censored

    def test_unreachable_threshold_censors(self):
        m = make_zero_drift_model(intercept=1e6, slope=0.0)
        s = simulate_em_fpt(m, 1.0, 1e-2, fresh_rng(70, 1))
        assert s.censored
        assert s.tau == 1.0

    def test_tau_on_grid_between_jumps(self):
        m = make_deterministic_model()
        s = simulate_em_fpt(m, 3.0, 0.01, fresh_rng(70, 2))
        # no jumps at rate 1e-12: tau is a multiple of h
        assert s.jumps_before == 0
        assert (s.tau / 0.01) == pytest.approx(round(s.tau / 0.01), abs=1e-9)

    def test_blowup_detected(self):
        m = make_zero_drift_model()
        object.__setattr__(m, "mu", lambda t, y, z: float("inf"))
        with pytest.raises(ModelEvaluationError):
            simulate_em_fpt(m, 1.0, 0.01, fresh_rng(70, 3))

    def test_jump_crossing_flagged(self):
        m = make_zero_drift_model(jump_size=lambda t, y, z: 10.0, jump_rate=50.0)
        s = simulate_em_fpt(m, 3.0, 1e-3, fresh_rng(70, 4))
        assert s.crossed_by_jump
        assert s.jumps_before == 1


class TestEmBias:
    def test_coarse_grid_overestimates_fpt(self):
        # crossing detection only at grid points: the coarse grid misses
        # excursions, so mean FPT at h = 0.1 dominates mean at h = 1e-3
        m = catalog_example1()
        coarse = run_em_batch(m, 3.0, 1e-1, 3000, seed=1)
        fine = run_em_batch(m, 3.0, 1e-3, 3000, seed=1)
        assert np.mean([s.tau for s in coarse]) >= np.mean([s.tau for s in fine])


class TestEmBatch:
    def test_deterministic_and_worker_invariant(self):
        m = catalog_example1()
        a = run_em_batch(m, 3.0, 1e-2, 200, seed=9, workers=1)
        b = run_em_batch(m, 3.0, 1e-2, 200, seed=9, workers=4)
        assert a == b

    def test_streams_disjoint_from_exact(self):
        # same master seed must not couple the exact and EM batches
        from pdifmp_fpt.conditional import ConditionalConfig
        from pdifmp_fpt.hybrid import run_batch

        m = make_zero_drift_model(y0=0.0)
        cfg = ConditionalConfig.for_model(m)
        exact = [s.tau for s in run_batch(m, 3.0, cfg, 200, seed=4)]
        em = [s.tau for s in run_em_batch(m, 3.0, 1e-2, 200, seed=4)]
        matches = sum(abs(a - b) < 1e-12 for a, b in zip(exact, em))
        assert matches < 5
