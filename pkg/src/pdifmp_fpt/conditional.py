"""Value of the tracking diffusion at the jump time, given no prior crossing.

Two stages, both in transformed coordinates.

Stage one tracks a Brownian path below the threshold with straight lines
whose slope lies below the threshold's derivative infimum: the first line is
anchored on the threshold at the interval start, each subsequent line is
anchored on the threshold at the previous hitting time, and the hitting
times walk the path forward until one lands at or past the jump time.  A
hit within ``epsilon`` of the threshold before the jump time marks a
suspected crossing and restarts the construction with a fresh path; if the
first line is not hit before the jump time, its slope is lowered by
``s_decrement`` until the floor ``s_min`` is reached, at which point the
hit of the floor line is accepted outright.  The returned point carries the
whole chain of tracking segments.

Stage two turns the chain into the value at the jump time.  Given the chain,
the path inside each segment is exactly a first-passage bridge to that
segment's line (strong Markov property), so the gap to the line is a
three-dimensional Bessel bridge from the segment's entry gap to zero,
realized as the norm of a pinned 3D Gaussian bridge.  The jump-time value is
read from the final segment's bridge, and the proposal is accepted against
the change-of-measure weight of the diffusion restricted to the interval
up to the jump time: Poisson thinning of ``gamma2`` along the chain bridges
on ``[t_i, t_next]`` times the endpoint weight ``exp(A(t_next, x) - A_cap)``.
Any rejection restarts stage one with a fresh point.

The acceptance constant ``A_cap`` may be any upper bound of ``A`` on the
reachable set ``x <= beta(t_next)``; it scales every proposal equally, so
tightening it (via the model's ``A_sup``) changes cost, never the law.
"""

import math
import random
from dataclasses import dataclass, field

from .brownian import LineBarrier, bridge_point_between, fpt_to_line
from .errors import (
    AssumptionViolationError,
    DomainError,
    SamplingBudgetError,
)
from .transform import (
    GAMMA_NEGATIVITY_TOLERANCE,
    transformed_threshold,
)

__all__ = [
    "ConditionalConfig",
    "ConditionalPoint",
    "ChainSegment",
    "sample_conditional_point",
    "sample_value_at_jump",
]

_SQRT = math.sqrt
_LOG = math.log

MAX_BARRIERS = 10 ** 6
MAX_PROPOSALS = 10 ** 6


@dataclass(frozen=True)
class ConditionalConfig:
    """Tuning knobs of the conditional point construction.

    s_init:      starting line slope, strictly below the threshold's
                 derivative infimum;
    s_min:       slope floor ending the reduction loop;
    s_decrement: slope reduction step;
    epsilon:     gap below which a threshold crossing is suspected.
    """

    s_init: float
    s_min: float
    s_decrement: float = 1.0
    epsilon: float = 1e-3

    def __post_init__(self):
        if self.s_min > self.s_init:
            raise DomainError(f"s_min={self.s_min} must not exceed s_init={self.s_init}")
        if not self.s_decrement > 0.0:
            raise DomainError(f"s_decrement must be positive, got {self.s_decrement}")
        if not self.epsilon > 0.0:
            raise DomainError(f"epsilon must be positive, got {self.epsilon}")

    @staticmethod
    def for_model(model, s_min: float = -10.0, s_decrement: float = 1.0,
                  epsilon: float = 1e-3) -> "ConditionalConfig":
        """Default config for one model: track at the floor slope itself.

        The initial slope is tied to the floor (capped one unit below the
        threshold's derivative infimum), so the reduction loop stays inert
        and a hit past the jump time is accepted outright.  Starting above
        the floor and resampling on reduction conditions the kept chains on
        hitting fast, which measurably biases the conditional value; the
        floor-accept branch is exact for slopes whose hits are almost surely
        finite.
        """
        cap = model.threshold.derivative_infimum - 1.0
        s_init = min(cap, s_min)
        return ConditionalConfig(
            s_init=s_init,
            s_min=min(s_min, s_init),
            s_decrement=s_decrement,
            epsilon=epsilon,
        )


@dataclass(frozen=True)
class ChainSegment:
    """One tracking stretch: the path runs from its entry point to the first
    hit of the line ``anchor + slope * (t - t_start)`` at ``t_end``, entering
    ``start_gap`` below the line."""

    t_start: float
    t_end: float
    anchor: float
    start_gap: float


@dataclass(frozen=True)
class ConditionalPoint:
    """A path point at or past the jump time, with its tracking chain."""

    t_c: float
    x_c: float
    slope_used: float
    barriers_built: int
    chain: tuple = field(default=())


def sample_conditional_point(
    model,
    t_i: float,
    t_next: float,
    x_i: float,
    cfg: ConditionalConfig,
    rng: random.Random,
    z: float,
    max_barriers: int = MAX_BARRIERS,
) -> ConditionalPoint:
    """Sample ``(t_c, x_c)`` from a Brownian path below the threshold up to ``t_next``."""
    if not cfg.s_init < model.threshold.derivative_infimum:
        raise DomainError(
            f"s_init={cfg.s_init} must lie strictly below the threshold's "
            f"derivative infimum {model.threshold.derivative_infimum}"
        )
    if model.sigma_is_unit:
        beta = model.threshold.value
    else:
        def beta(t):
            return transformed_threshold(model, t, z)
    beta_i = beta(t_i)
    if not x_i < beta_i:
        raise DomainError(f"x_i={x_i} must start below the threshold {beta_i} at t={t_i}")
    if not t_next > t_i:
        raise DomainError(f"t_next={t_next} must exceed t_i={t_i}")

    eps = cfg.epsilon
    s = cfg.s_init
    gap_first = beta_i - x_i
    barriers = 0
    while barriers < max_barriers:
        barriers += 1
        t1 = t_i + fpt_to_line(LineBarrier(t_i, gap_first, s), rng)
        if t1 >= t_next:
            if s > cfg.s_min:
                s -= cfg.s_decrement
                continue
            if math.isinf(t1):
                raise SamplingBudgetError(
                    "tracking line is never hit (receding slope); the "
                    "conditional sampler needs slopes giving finite hits"
                )
            # slope floor: accept the hit of the fixed first line
            return ConditionalPoint(
                t1, beta_i + s * (t1 - t_i), s, barriers,
                (ChainSegment(t_i, t1, beta_i, gap_first),),
            )
        d = beta(t1) - (beta_i + s * (t1 - t_i))
        if d <= eps:
            continue  # suspected crossing before the jump: fresh path
        chain = [ChainSegment(t_i, t1, beta_i, gap_first)]
        t_prev = t1
        while barriers < max_barriers:
            barriers += 1
            anchor = beta(t_prev)
            t_j = t_prev + fpt_to_line(LineBarrier(t_prev, d, s), rng)
            if math.isinf(t_j):
                raise SamplingBudgetError(
                    "tracking line is never hit (receding slope); the "
                    "conditional sampler needs slopes giving finite hits"
                )
            chain.append(ChainSegment(t_prev, t_j, anchor, d))
            x_j_val = anchor + s * (t_j - t_prev)
            d = beta(t_j) - x_j_val
            if t_j >= t_next:
                return ConditionalPoint(t_j, x_j_val, s, barriers, tuple(chain))
            if d <= eps:
                break  # suspected crossing: restart with a fresh first hit
            t_prev = t_j
    raise SamplingBudgetError(
        f"conditional point not found after {max_barriers} tracking lines "
        f"(t_i={t_i}, t_next={t_next}, x_i={x_i}); the start may be too close "
        "to the threshold for the configured epsilon"
    )


def _thin_chain(rng, rate, gamma2_at, slope, chain, t_stop, l_stop_seg, l_stop_e, l_stop):
    """Poisson-thin gamma2 along the chain bridges on ``(t_start, t_stop]``.

    ``l_stop`` is the already-drawn bridge deviation at elapsed ``l_stop_e``
    inside segment index ``l_stop_seg`` (the jump-time draw); points in that
    segment before it are conditioned on it.  Returns True when no Poisson
    point falls under the graph.
    """
    if rate == 0.0:
        return True
    t0 = chain[0].t_start
    t_p = t0 + rng.expovariate(rate)
    seg_idx = 0
    seg = chain[0]
    l_prev = (0.0, 0.0, 0.0)
    e_prev = 0.0
    while t_p <= t_stop:
        while t_p > seg.t_end:
            seg_idx += 1
            seg = chain[seg_idx]
            l_prev = (0.0, 0.0, 0.0)
            e_prev = 0.0
        e = t_p - seg.t_start
        length = seg.t_end - seg.t_start
        if seg_idx == l_stop_seg and e <= l_stop_e:
            anchor_e, anchor_l = l_stop_e, l_stop
        else:
            anchor_e, anchor_l = length, (0.0, 0.0, 0.0)
        l_prev = bridge_point_between(l_prev, e_prev, anchor_l, anchor_e, e, rng)
        e_prev = e
        m = seg.start_gap * (1.0 - e / length) + l_prev[0]
        gap = _SQRT(m * m + l_prev[1] * l_prev[1] + l_prev[2] * l_prev[2])
        xi = (seg.anchor + slope * e) - gap
        if rate * rng.random() <= gamma2_at(t_p, xi):
            return False
        t_p += rng.expovariate(rate)
    return True


def sample_value_at_jump(
    model,
    t_i: float,
    t_next: float,
    x_i: float,
    z: float,
    cfg: ConditionalConfig,
    rng: random.Random,
    max_proposals: int = MAX_PROPOSALS,
) -> float:
    """Tracking-process value at ``t_next`` conditioned on no crossing before it."""
    g = model.girsanov
    kappa2 = g.kappa2
    a_plus = g.A_plus
    if not (math.isfinite(kappa2) and math.isfinite(a_plus)):
        raise AssumptionViolationError(
            f"kappa2/A_plus are not finite for model {model.name!r}"
        )

    if model.sigma_is_unit:
        beta = model.threshold.value
    else:
        def beta(t):
            return transformed_threshold(model, t, z)

    a_fn = g.A
    alpha_fn, alpha_dx, a_dt = g.alpha, g.alpha_dx, g.A_dt

    def gamma2_at(t, xi):
        a = alpha_fn(t, xi, z)
        val = a_dt(t, xi, z) + 0.5 * (alpha_dx(t, xi, z) + a * a)
        if val < -GAMMA_NEGATIVITY_TOLERANCE:
            raise AssumptionViolationError(f"gamma2 = {val} < 0 at t={t}, x={xi}")
        return val

    # acceptance constant: sup of A over the reachable set x <= beta(t_next);
    # any valid bound gives the same law
    beta_next = beta(t_next)
    a_cap = a_plus
    if g.A_sup is not None:
        a_cap = min(a_cap, g.A_sup(z, beta_next))

    weight_rejections = 0
    thin_rejections = 0
    for _proposal in range(1, max_proposals + 1):
        pt = sample_conditional_point(model, t_i, t_next, x_i, cfg, rng, z)
        s = pt.slope_used
        chain = pt.chain
        last = chain[-1]  # t_next always falls in the final segment
        length = last.t_end - last.t_start
        e_j = t_next - last.t_start

        # jump-time value from the final segment's first-passage bridge
        if e_j >= length:
            l_j = (0.0, 0.0, 0.0)
            gap_j = 0.0
        else:
            l_j = bridge_point_between(
                (0.0, 0.0, 0.0), 0.0, (0.0, 0.0, 0.0), length, e_j, rng
            )
            m = last.start_gap * (1.0 - e_j / length) + l_j[0]
            gap_j = _SQRT(m * m + l_j[1] * l_j[1] + l_j[2] * l_j[2])
        x_val = (last.anchor + s * e_j) - gap_j

        # endpoint weight exp(A(t_next, x) - a_cap), cheapest factor first
        if _LOG(1.0 - rng.random()) > a_fn(t_next, x_val, z) - a_cap:
            weight_rejections += 1
            continue

        # thinning of gamma2 along the conditioned path on [t_i, t_next]
        if not _thin_chain(
            rng, kappa2, gamma2_at, s, chain, t_next, len(chain) - 1, e_j, l_j
        ):
            thin_rejections += 1
            continue

        return x_val

    raise SamplingBudgetError(
        f"no conditional path accepted after {max_proposals} proposals "
        f"(endpoint-weight rejections: {weight_rejections}, thinning "
        f"rejections: {thin_rejections}); A_plus/kappa2 are likely far from "
        "the functionals' actual range"
    )
