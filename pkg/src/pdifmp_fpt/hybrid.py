"""Full exact FPT of the hybrid process, censored at a terminal horizon.

The recursion alternates continuous phases and jump updates.  Per interval:
draw the next jump time from the constant rate; draw the continuous-phase
FPT exactly; if it lands before both the jump and the horizon, stop there.
If the horizon comes first, censor.  Otherwise sample the tracking value at
the jump time conditioned on no crossing, map it back through the inverse
transform with the outgoing mode, apply the jump at the pre-jump state, draw
the new mode, re-transform with the incoming mode, and either stop (the jump
crossed) or recurse.

Batches derive one independent RNG stream per sample index from the master
seed, so outputs are reproducible bit for bit regardless of worker count.
"""

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .conditional import ConditionalConfig, sample_value_at_jump
from .errors import BatchSampleError, DomainError, SamplingBudgetError
from .exact_fpt import simulate_fpt_continuous
from .model import HybridState, apply_jump
from .rng import derive_rng
from .transform import lamperti_forward, lamperti_inverse, transformed_threshold

__all__ = [
    "FPTSample",
    "sample_jump_waiting_time",
    "simulate_fpt",
    "run_batch",
    "run_generic_batch",
]

MAX_JUMPS = 10 ** 5

# equality tolerance for the tie "continuous FPT == jump time"
_TIE_TOLERANCE = 1e-12

EXACT_STREAM = 0
EM_STREAM = 1


@dataclass(frozen=True)
class FPTSample:
    """One simulated outcome of min(first-passage time, horizon)."""

    tau: float
    censored: bool
    jumps_before: int
    crossed_by_jump: bool


def sample_jump_waiting_time(jump_rate: float, rng: random.Random) -> float:
    if not jump_rate > 0.0:
        raise DomainError(f"jump rate must be positive, got {jump_rate}")
    return rng.expovariate(jump_rate)


def simulate_fpt(
    model,
    t_f: float,
    cfg: ConditionalConfig,
    rng: random.Random,
    max_jumps: int = MAX_JUMPS,
) -> FPTSample:
    """One exact draw of min(tau, t_f) for the hybrid process."""
    if not t_f > 0.0:
        raise DomainError(f"terminal time must be positive, got {t_f}")
    z = model.initial.z
    x = lamperti_forward(model, 0.0, model.initial.y, z)

    if model.sigma_is_unit:
        beta = model.threshold.value

        def beta_at(t, _z):
            return beta(t)
    else:
        def beta_at(t, zz):
            return transformed_threshold(model, t, zz)

    t_i = 0.0
    jumps = 0
    while jumps <= max_jumps:
        t_next = t_i + sample_jump_waiting_time(model.jump_rate, rng)
        tau1 = simulate_fpt_continuous(model, t_i, x, z, rng).tau

        if tau1 < t_next and tau1 <= t_f:
            return FPTSample(tau1, False, jumps, False)
        if t_f <= t_next:
            # no jump before the horizon; tau1 >= min(t_next, t_f) >= t_f here
            return FPTSample(t_f, not tau1 <= t_f, jumps, False)

        # jump at t_next < t_f with tau1 >= t_next: value at the jump time
        if tau1 - t_next <= _TIE_TOLERANCE:
            x_pre = beta_at(t_next, z)
        else:
            x_pre = sample_value_at_jump(model, t_i, t_next, x, z, cfg, rng)

        y_pre = lamperti_inverse(model, t_next, x_pre, z)
        state = apply_jump(model, t_next, HybridState(y_pre, z), rng.random())
        jumps += 1
        z = state.z
        x = lamperti_forward(model, t_next, state.y, z)
        if x >= beta_at(t_next, z):
            return FPTSample(t_next, False, jumps, True)
        t_i = t_next

    raise SamplingBudgetError(
        f"{max_jumps} jumps without crossing or reaching the horizon; "
        "the model's jump dynamics look explosive"
    )


def run_generic_batch(sample_one, n: int, seed: int, workers: int = 1, stream: int = 0):
    """Draw ``n`` samples, each from its own stream derived from ``(seed, stream, k)``.

    ``sample_one(rng)`` produces a single sample.  Results are ordered by
    index and identical for any worker count.
    """
    if n < 1:
        raise DomainError(f"batch size must be at least 1, got {n}")

    def draw(k):
        try:
            return sample_one(derive_rng(seed, stream, k))
        except Exception as exc:  # noqa: BLE001 - annotate with the index
            raise BatchSampleError(k, str(exc)) from exc

    if workers <= 1:
        return [draw(k) for k in range(n)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(draw, range(n)))


def run_batch(
    model,
    t_f: float,
    cfg: ConditionalConfig,
    n: int,
    seed: int,
    workers: int = 1,
):
    """n independent exact FPT samples (deterministic in (seed, index))."""
    return run_generic_batch(
        lambda rng: simulate_fpt(model, t_f, cfg, rng),
        n,
        seed,
        workers,
        stream=EXACT_STREAM,
    )
