"""Exact first-passage time of the tracking diffusion to the threshold.

Rejection sampling in transformed coordinates: propose a candidate hitting
time from the Brownian first-passage law to the (transformed, linear)
threshold, then accept or reject by Poisson thinning.  A unit-rate planar
Poisson process on ``[0, candidate] x [0, kappa]`` is realized through
exponential spacings; the candidate survives when no point falls under the
graph of ``gamma1(t) + gamma2(t, xi_t)`` evaluated along the conditioned
path, which is reconstructed only at the thinning times through the pinned
gap process (a 3D-bridge norm running from the initial gap to zero at the
candidate time).  Acceptance probability equals
``exp(-integral of (gamma1 + gamma2))`` path by path, which is exactly the
first-passage reweighting of the underlying change of measure.

Infinite candidates (receding threshold) are returned as ``math.inf``
without thinning; the hybrid layer compares them against the next jump time
and the horizon.
"""

import math
import random
from dataclasses import dataclass

from .brownian import LineBarrier, fpt_to_line
from .errors import (
    AssumptionViolationError,
    DomainError,
    SamplingBudgetError,
    UnsupportedThresholdError,
)
from .transform import GAMMA_NEGATIVITY_TOLERANCE

__all__ = [
    "ContinuousFPTResult",
    "sample_candidate_fpt",
    "simulate_fpt_continuous",
    "thin_bridge_segment",
]

_SQRT = math.sqrt

MAX_CANDIDATES = 10 ** 6


@dataclass(frozen=True)
class ContinuousFPTResult:
    """One continuous-phase FPT draw with its rejection-effort statistics."""

    tau: float
    candidates_tried: int
    thinning_points_used: int


def _transformed_line(model, z: float):
    """(intercept, slope) of the transformed threshold, if it is a line."""
    th = model.threshold
    if th.kind != "linear":
        return None
    c = model.sigma_constant
    if c is None:
        return None
    # constant sigma: F(t, y, z) = y / c (plus a constant that cancels in gaps)
    return th.intercept / c, th.slope / c


def sample_candidate_fpt(model, t_start: float, x_start: float, z: float, rng: random.Random) -> float:
    """Draw the Brownian candidate hitting time (absolute, possibly inf)."""
    if model.candidate_fpt_sampler is not None:
        return model.candidate_fpt_sampler(t_start, x_start, z, rng)
    line = _transformed_line(model, z)
    if line is None:
        raise UnsupportedThresholdError(
            "no exact candidate law for a threshold whose transformed image "
            "is not a straight line; supply model.candidate_fpt_sampler"
        )
    _, slope = line
    # gap through the model's own transform so any additive constant in F
    # stays consistent with x_start
    from .transform import transformed_threshold

    gap = transformed_threshold(model, t_start, z) - x_start
    if gap < 0.0:
        raise DomainError(
            f"x_start={x_start} is above the transformed threshold at t={t_start}"
        )
    return t_start + fpt_to_line(LineBarrier(t_start, gap, slope), rng)


def thin_bridge_segment(
    rng: random.Random,
    rate: float,
    integrand,
    t_origin: float,
    e_from: float,
    e_to: float,
    l_from: tuple,
    e_anchor: float,
    l_anchor: tuple,
    pin_len: float,
    gap_start: float,
    gap_end: float,
):
    """Poisson-thin ``integrand`` along a pinned gap bridge on ``(e_from, e_to]``.

    The bridge deviations interpolate between the anchors ``(e_from, l_from)``
    and ``(e_anchor, l_anchor)``; the deterministic gap component interpolates
    ``gap_start -> gap_end`` over ``[0, pin_len]`` (elapsed measured from the
    bridge origin, absolute time is ``t_origin + e``).  ``integrand(t, xi)``
    receives the path value ``xi`` below the threshold and must stay within
    ``[0, rate]``.

    Returns ``(survived, points_used)``: survived means no Poisson point of
    rate ``rate`` fell under the integrand's graph.
    """
    if rate == 0.0:
        return True, 0
    points = 0
    e_prev = e_from
    l0, l1, l2 = l_from
    a0, a1, a2 = l_anchor
    gap_slope = (gap_end - gap_start) / pin_len
    e1 = e_prev + rng.expovariate(rate)
    while e1 <= e_to:
        span = e_anchor - e_prev
        w = (e1 - e_prev) / span
        sd = _SQRT((e_anchor - e1) * (e1 - e_prev) / span)
        l0 += w * (a0 - l0) + sd * rng.gauss(0.0, 1.0)
        l1 += w * (a1 - l1) + sd * rng.gauss(0.0, 1.0)
        l2 += w * (a2 - l2) + sd * rng.gauss(0.0, 1.0)
        m = gap_start + gap_slope * e1 + l0
        gap = _SQRT(m * m + l1 * l1 + l2 * l2)
        points += 1
        if rate * rng.random() <= integrand(t_origin + e1, gap):
            return False, points
        e_prev = e1
        e1 += rng.expovariate(rate)
    return True, points


def simulate_fpt_continuous(
    model,
    t_start: float,
    x_start: float,
    z: float,
    rng: random.Random,
    max_candidates: int = MAX_CANDIDATES,
) -> ContinuousFPTResult:
    """Exact FPT of the tracking diffusion started at ``(t_start, x_start)``.

    Requires the start strictly below the transformed threshold (a start on
    the threshold returns ``t_start`` immediately).  Candidates that never
    hit are passed through as ``math.inf``.
    """
    g = model.girsanov
    kappa = g.kappa
    if not math.isfinite(kappa):
        raise AssumptionViolationError(
            f"kappa is not finite for model {model.name!r}; cannot thin"
        )

    from .transform import transformed_threshold, transformed_threshold_derivative

    if model.sigma_is_unit:
        beta = model.threshold.value
        beta_prime = model.threshold.derivative
    else:
        def beta(t):
            return transformed_threshold(model, t, z)

        def beta_prime(t):
            return transformed_threshold_derivative(model, t, z)

    gap0 = beta(t_start) - x_start
    if gap0 < 0.0:
        raise DomainError(
            f"simulate_fpt_continuous started above the threshold: "
            f"x={x_start} > beta({t_start})={beta(t_start)}"
        )

    if kappa == 0.0:
        # gamma1 + gamma2 vanish identically: every candidate is accepted
        tau = sample_candidate_fpt(model, t_start, x_start, z, rng)
        return ContinuousFPTResult(tau, 1, 0)

    alpha_fn, alpha_dx, a_dt = g.alpha, g.alpha_dx, g.A_dt

    def rate_at(t, gap):
        beta_t = beta(t)
        g1 = -a_dt(t, beta_t, z) - alpha_fn(t, beta_t, z) * beta_prime(t)
        if g1 < -GAMMA_NEGATIVITY_TOLERANCE:
            raise AssumptionViolationError(f"gamma1 = {g1} < 0 at t={t}")
        xi = beta_t - gap
        a = alpha_fn(t, xi, z)
        g2 = a_dt(t, xi, z) + 0.5 * (alpha_dx(t, xi, z) + a * a)
        if g2 < -GAMMA_NEGATIVITY_TOLERANCE:
            raise AssumptionViolationError(f"gamma2 = {g2} < 0 at t={t}, x={xi}")
        return g1 + g2

    points_total = 0
    for tried in range(1, max_candidates + 1):
        tau_star = sample_candidate_fpt(model, t_start, x_start, z, rng)
        if math.isinf(tau_star):
            return ContinuousFPTResult(math.inf, tried, points_total)
        elapsed = tau_star - t_start
        if elapsed <= 0.0:
            return ContinuousFPTResult(tau_star, tried, points_total)
        survived, pts = thin_bridge_segment(
            rng,
            kappa,
            rate_at,
            t_start,
            0.0,
            elapsed,
            (0.0, 0.0, 0.0),
            elapsed,
            (0.0, 0.0, 0.0),
            elapsed,
            gap0,
            0.0,
        )
        points_total += pts
        if survived:
            return ContinuousFPTResult(tau_star, tried, points_total)
    raise SamplingBudgetError(
        f"no candidate accepted after {max_candidates} draws from "
        f"({t_start}, {x_start}); check the model's kappa bound"
    )
