"""Fine-grid Euler-Maruyama baseline for the same hybrid FPT problem.

The comparison standard: jump times are drawn exactly from the constant rate
and spliced into the grid (never rounded), the diffusion advances with plain
Euler-Maruyama steps between them, and a crossing is only detected at grid
points and jump times.  No bridge correction is applied; the known
discretization bias (FPT overestimation) shrinks with the step size.
"""

import math
import random

from .errors import ModelEvaluationError
from .hybrid import EM_STREAM, FPTSample, run_generic_batch, sample_jump_waiting_time
from .model import HybridState, apply_jump

__all__ = ["simulate_em_fpt", "run_em_batch"]


def simulate_em_fpt(model, t_f: float, h: float, rng: random.Random) -> FPTSample:
    """One Euler-Maruyama draw of min(tau, t_f) on a step-h grid."""
    if not h > 0.0:
        raise ModelEvaluationError(f"step size must be positive, got {h}")
    mu, sigma, thresh = model.mu, model.sigma, model.threshold.value
    gauss = rng.gauss
    y = model.initial.y
    z = model.initial.z
    t = 0.0
    jumps = 0
    next_jump = sample_jump_waiting_time(model.jump_rate, rng)
    while t < t_f:
        seg_end = min(next_jump, t_f)
        while t < seg_end:
            dt = h if t + h <= seg_end else seg_end - t
            y += mu(t, y, z) * dt + sigma(t, y, z) * math.sqrt(dt) * gauss(0.0, 1.0)
            t += dt
            if not math.isfinite(y):
                raise ModelEvaluationError(
                    f"Euler-Maruyama state blew up at t={t} (y={y})"
                )
            if y >= thresh(t):
                return FPTSample(min(t, t_f), False, jumps, False)
        if next_jump >= t_f:
            break
        state = apply_jump(model, t, HybridState(y, z), rng.random())
        jumps += 1
        y, z = state.y, state.z
        if y >= thresh(t):
            return FPTSample(t, False, jumps, True)
        next_jump = t + sample_jump_waiting_time(model.jump_rate, rng)
    return FPTSample(t_f, True, jumps, False)


def run_em_batch(model, t_f: float, h: float, n: int, seed: int, workers: int = 1):
    """n independent EM samples; streams are disjoint from the exact batches."""
    return run_generic_batch(
        lambda rng: simulate_em_fpt(model, t_f, h, rng),
        n,
        seed,
        workers,
        stream=EM_STREAM,
    )
