"""Exact Brownian building blocks.

Three primitives used throughout the samplers:

* inverse-Gaussian variates (hitting law of Brownian motion to a line),
* the first-passage time of Brownian motion to a straight line, including
  the defective case where the line recedes and the hitting time is infinite
  with positive probability,
* skeleton points of the gap process between a Brownian path and the
  threshold, conditioned on its endpoints.  The gap is represented as the
  norm of a 3-dimensional Brownian bridge whose first coordinate carries the
  pinned endpoint gaps, which keeps the conditioned path strictly below the
  threshold in the interior.

Infinite hitting times are returned as ``math.inf`` (checked with
``math.isinf``), never as an in-band finite sentinel.
"""

import math
import random
from dataclasses import dataclass, replace

from .errors import DomainError

__all__ = [
    "LineBarrier",
    "BridgeSkeleton",
    "sample_inverse_gaussian",
    "fpt_to_line",
    "bridge_point_between",
    "bessel_bridge_point",
]

_SQRT = math.sqrt
_LOG = math.log
_EXP = math.exp


@dataclass(frozen=True)
class LineBarrier:
    """A straight-line barrier relative to a Brownian path.

    t0:  time at which the query starts;
    a:   gap between the barrier and the path at ``t0`` (>= 0);
    b:   slope of the barrier (the path itself is driftless).
    """

    t0: float
    a: float
    b: float

    def __post_init__(self):
        if self.a < 0.0:
            raise DomainError(
                f"barrier gap must be non-negative, got a={self.a} "
                "(the path is already past the line)"
            )


@dataclass(frozen=True)
class BridgeSkeleton:
    """Running state of a pinned gap process sampled at increasing times.

    ``l`` holds the 3D Brownian-bridge deviations (zero at both ends of the
    bridge); the deterministic part of the gap interpolates ``pin_start`` at
    elapsed 0 to ``pin_end`` at elapsed ``total``.  The gap at elapsed ``e``
    is ``|| (interp(e), 0, 0) + l(e) ||``, which is strictly positive in the
    interior whenever a pin is positive.
    """

    total: float
    pin_start: float
    pin_end: float
    e_prev: float = 0.0
    l: tuple = (0.0, 0.0, 0.0)

    def gap(self) -> float:
        m = self.pin_start + (self.pin_end - self.pin_start) * (self.e_prev / self.total)
        l0, l1, l2 = self.l
        return _SQRT((m + l0) ** 2 + l1 ** 2 + l2 ** 2)


def sample_inverse_gaussian(mean: float, shape: float, rng: random.Random) -> float:
    """One draw from the inverse-Gaussian law IG(mean, shape).

    Michael-Schucany-Haas transform with a single acceptance flip; strictly
    positive output.
    """
    if mean <= 0.0 or shape <= 0.0:
        raise DomainError(f"IG parameters must be positive, got ({mean}, {shape})")
    nu = rng.gauss(0.0, 1.0)
    y = nu * nu
    my = mean * y
    # Evaluate the larger quadratic root first and take the smaller one as
    # mean^2 / x_big; this avoids the cancellation that can round the small
    # root to zero when mean*y >> shape.
    x_big = mean + mean * (my + _SQRT(my * (4.0 * shape + my))) / (2.0 * shape)
    x = mean * mean / x_big
    if rng.random() <= mean / (mean + x):
        return x
    return x_big


def fpt_to_line(barrier: LineBarrier, rng: random.Random) -> float:
    """Elapsed first-passage time of Brownian motion to a straight line.

    The path starts ``barrier.a`` below the line; the line moves with slope
    ``barrier.b``.  Closing line (b < 0): almost surely finite, inverse
    Gaussian IG(a/|b|, a^2).  Receding line (b > 0): finite only with
    probability exp(-2ab), in which case the conditional law is IG(a/b, a^2);
    otherwise returns ``math.inf``.  Level line (b = 0): the Levy law a^2/N^2.
    """
    a = barrier.a
    b = barrier.b
    if a == 0.0:
        return 0.0
    if b < 0.0:
        return sample_inverse_gaussian(a / -b, a * a, rng)
    if b > 0.0:
        # Bernoulli split on the known defect mass, then the conditional IG.
        if rng.random() >= _EXP(-2.0 * a * b):
            return math.inf
        return sample_inverse_gaussian(a / b, a * a, rng)
    n = rng.gauss(0.0, 1.0)
    while n == 0.0:
        n = rng.gauss(0.0, 1.0)
    return (a / n) ** 2


def bridge_point_between(
    l_from: tuple,
    e_from: float,
    l_to: tuple,
    e_to: float,
    e_new: float,
    rng: random.Random,
) -> tuple:
    """Sample the 3D bridge deviation at ``e_new`` given anchors at ``e_from``/``e_to``.

    Standard Gaussian bridge conditioning: linear interpolation of the two
    anchor values plus independent N(0, (e_to-e_new)(e_new-e_from)/(e_to-e_from))
    noise per coordinate.
    """
    span = e_to - e_from
    w = (e_new - e_from) / span
    sd = _SQRT((e_to - e_new) * (e_new - e_from) / span)
    return (
        l_from[0] + w * (l_to[0] - l_from[0]) + sd * rng.gauss(0.0, 1.0),
        l_from[1] + w * (l_to[1] - l_from[1]) + sd * rng.gauss(0.0, 1.0),
        l_from[2] + w * (l_to[2] - l_from[2]) + sd * rng.gauss(0.0, 1.0),
    )


def bessel_bridge_point(
    skel: BridgeSkeleton,
    e_next: float,
    threshold_at: float,
    rng: random.Random,
):
    """Advance the skeleton to elapsed ``e_next`` and evaluate the path there.

    Returns ``(skel', xi)`` where ``xi = threshold_at - gap(e_next)``; by
    construction ``xi <= threshold_at``.
    """
    if not (skel.e_prev <= e_next <= skel.total):
        raise DomainError(
            f"bridge advanced out of range: e_prev={skel.e_prev}, "
            f"e_next={e_next}, total={skel.total}"
        )
    l_new = bridge_point_between(
        skel.l, skel.e_prev, (0.0, 0.0, 0.0), skel.total, e_next, rng
    ) if e_next > skel.e_prev else skel.l
    skel2 = replace(skel, e_prev=e_next, l=l_new)
    return skel2, threshold_at - skel2.gap()
