"""Shared synthetic models and helpers for the test suite."""

import math

import pytest

from pdifmp_fpt.model import HybridState, PDifMPModel, Threshold
from pdifmp_fpt.rng import derive_rng
from pdifmp_fpt.transform import GirsanovData


def _zero(t, x, z):
    return 0.0


def make_zero_drift_model(intercept=1.0, slope=-1.0, y0=0.0, jump_rate=1.0,
                          jump_size=None, kernel=None, numeric_bounds=False):
    """Driftless unit-noise model: the tracking process is Brownian motion."""
    return PDifMPModel(
        mu=_zero,
        sigma=lambda t, y, z: 1.0,
        jump_rate=jump_rate,
        jump_size=jump_size or _zero,
        kernel_sampler=kernel or (lambda u, state: state.z),
        threshold=Threshold.linear(intercept, slope),
        initial=HybridState(y0, 1.0),
        girsanov=GirsanovData(
            F=lambda t, y, z: y,
            F_inverse=lambda t, x, z: x,
            alpha=_zero,
            alpha_dx=_zero,
            A=_zero,
            A_dt=_zero,
            kappa=0.0,
            kappa2=0.0,
            A_plus=0.0,
            numeric_fallback=numeric_bounds,
        ),
        name="zero-drift",
    )


def make_constant_drift_model(c, intercept=1.0, slope=-1.0, y0=0.0):
    """Unit-noise model with constant transformed drift c.

    gamma1 = -c * slope and gamma2 = c^2 / 2, both constant; with slope = -1
    their sum is c + c^2/2.
    """
    return PDifMPModel(
        mu=lambda t, y, z: c,
        sigma=lambda t, y, z: 1.0,
        jump_rate=1.0,
        jump_size=_zero,
        kernel_sampler=lambda u, state: state.z,
        threshold=Threshold.linear(intercept, slope),
        initial=HybridState(y0, 1.0),
        girsanov=GirsanovData(
            F=lambda t, y, z: y,
            F_inverse=lambda t, x, z: x,
            alpha=lambda t, x, z: c,
            alpha_dx=_zero,
            A=lambda t, x, z: c * x,
            A_dt=_zero,
            kappa=-slope * c + 0.5 * c * c,
            kappa2=0.5 * c * c,
            A_plus=c * max(intercept, 0.0) if c >= 0 else 0.0,
            A_sup=lambda z, x_max: c * x_max,
        ),
        name="constant-drift",
    )


def make_scaled_sigma_model(c=2.0, intercept=2.0, slope=0.0, y0=-1.0):
    """Zero-drift model with constant sigma = c; Lamperti map is y / c."""
    return PDifMPModel(
        mu=_zero,
        sigma=lambda t, y, z: c,
        jump_rate=1.0,
        jump_size=_zero,
        kernel_sampler=lambda u, state: state.z,
        threshold=Threshold.linear(intercept, slope),
        initial=HybridState(y0, 1.0),
        girsanov=GirsanovData(
            F=lambda t, y, z: y / c,
            F_inverse=lambda t, x, z: c * x,
            alpha=_zero,
            alpha_dx=_zero,
            A=_zero,
            A_dt=_zero,
            kappa=0.0,
            kappa2=0.0,
            A_plus=0.0,
        ),
        name="scaled-sigma",
    )


@pytest.fixture
def rng():
    return derive_rng(2024, 0)


def fresh_rng(seed, *key):
    return derive_rng(seed, *key)
