"""Lamperti transform and the drift functionals driving the rejection weights.

A model carries its transform data analytically in :class:`GirsanovData`:
the space transform ``F`` that renders the diffusion coefficient unitary,
the transformed drift ``alpha`` with its x-derivative, the antiderivative
``A`` of ``alpha`` in x with its time derivative, and uniform upper bounds
over the pre-crossing region.  The two threshold functionals

    gamma1(t, z) = -dA/dt(t, beta(t), z) - alpha(t, beta(t), z) * beta'(t)
    gamma2(t, x, z) = dA/dt(t, x, z) + (d alpha/dx(t, x, z) + alpha^2) / 2

must be non-negative wherever the samplers evaluate them; negativity beyond
a small tolerance is reported as an assumption violation, never clamped.

Antiderivative convention: ``F`` and ``A`` are indefinite integrals; the
catalog fixes their free constants to zero (natural antiderivative form).
Additive constants cancel in every weight as long as the supplied bounds are
consistent with the same convention.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import AssumptionViolationError, DomainError

__all__ = [
    "GirsanovData",
    "GAMMA_NEGATIVITY_TOLERANCE",
    "lamperti_forward",
    "lamperti_inverse",
    "transformed_threshold",
    "transformed_threshold_derivative",
    "gamma1",
    "gamma2",
    "bounds",
]

# gamma values this far below zero are treated as roundoff, not violations
GAMMA_NEGATIVITY_TOLERANCE = 1e-12

_FD_STEP = 1e-6


@dataclass(frozen=True)
class GirsanovData:
    """Analytic transform data for one model.

    All callables take ``(t, value, z)`` with the discrete mode ``z`` held
    fixed within an inter-jump interval.

    F / F_inverse: the Lamperti map and its spatial inverse;
    alpha, alpha_dx: transformed drift and its x-derivative;
    A, A_dt: antiderivative of alpha in x, and its time derivative;
    kappa:  uniform bound on gamma1 + gamma2 over the pre-crossing region;
    kappa2: uniform bound on gamma2 alone;
    A_plus: uniform upper bound on A over the pre-crossing region;
    A_sup:  optional ``(z, x_max) -> sup`` of A over ``x <= x_max`` for the
            given mode, used to tighten per-call acceptance constants (any
            valid bound yields the same law; tight bounds only save work);
    numeric_fallback: compute the bounds by grid supremum instead of trusting
            the kappa/kappa2/A_plus fields.
    """

    F: Callable[[float, float, float], float]
    F_inverse: Callable[[float, float, float], float]
    alpha: Callable[[float, float, float], float]
    alpha_dx: Callable[[float, float, float], float]
    A: Callable[[float, float, float], float]
    A_dt: Callable[[float, float, float], float]
    kappa: float
    kappa2: float
    A_plus: float
    A_sup: Optional[Callable[[float, float], float]] = None
    numeric_fallback: bool = False


def lamperti_forward(model, t: float, y: float, z: float) -> float:
    """Map the original state ``y`` to transformed coordinates ``x = F(t, y, z)``."""
    sig = model.sigma(t, y, z)
    if not sig > 0.0:
        raise DomainError(f"sigma(t={t}, y={y}, z={z}) = {sig} is not positive")
    return model.girsanov.F(t, y, z)


def lamperti_inverse(model, t: float, x: float, z: float) -> float:
    return model.girsanov.F_inverse(t, x, z)


def transformed_threshold(model, t: float, z: float) -> float:
    """Threshold in transformed coordinates: beta(t) = F(t, beta_tilde(t), z)."""
    return lamperti_forward(model, t, model.threshold.value(t), z)


def transformed_threshold_derivative(model, t: float, z: float) -> float:
    """Time derivative of the transformed threshold.

    Exact for unit diffusion (the transform is the identity); otherwise a
    central finite difference of the transformed threshold.
    """
    if model.sigma_is_unit:
        return model.threshold.derivative(t)
    h = _FD_STEP
    lo = transformed_threshold(model, max(t - h, 0.0), z)
    hi = transformed_threshold(model, t + h, z)
    return (hi - lo) / ((t + h) - max(t - h, 0.0))


def _check_nonnegative(value: float, name: str, where: str) -> float:
    if value < -GAMMA_NEGATIVITY_TOLERANCE:
        raise AssumptionViolationError(
            f"{name} = {value} < 0 at {where}; the rejection weights require "
            f"non-negative {name} over the pre-crossing region"
        )
    return value


def gamma1(model, t: float, z: float) -> float:
    """Moving-boundary component of the rejection rate (must be >= 0)."""
    g = model.girsanov
    beta_t = transformed_threshold(model, t, z)
    value = -g.A_dt(t, beta_t, z) - g.alpha(t, beta_t, z) * transformed_threshold_derivative(model, t, z)
    return _check_nonnegative(value, "gamma1", f"t={t}, z={z}")


def gamma2(model, t: float, x: float, z: float) -> float:
    """Nonlinear-drift component of the rejection rate (must be >= 0)."""
    g = model.girsanov
    a = g.alpha(t, x, z)
    value = g.A_dt(t, x, z) + 0.5 * (g.alpha_dx(t, x, z) + a * a)
    return _check_nonnegative(value, "gamma2", f"t={t}, x={x}, z={z}")


def bounds(
    model,
    t_max: Optional[float] = None,
    x_span: float = 10.0,
    grid: int = 400,
    safety: float = 1.1,
):
    """Uniform bounds (kappa, kappa2, A_plus) over the pre-crossing region.

    Analytic models return their stored constants.  With
    ``girsanov.numeric_fallback`` set, the bounds are grid suprema over
    ``t in [0, t_max]``, ``x in [beta(t) - x_span, beta(t)]`` and a small set
    of kernel-sampled modes, inflated by ``safety`` (thinning stays exact for
    any upper bound; looseness only costs acceptance rate).
    """
    g = model.girsanov
    if not g.numeric_fallback:
        for name, v in (("kappa", g.kappa), ("kappa2", g.kappa2), ("A_plus", g.A_plus)):
            if not math.isfinite(v):
                raise AssumptionViolationError(
                    f"{name} is not finite for model {model.name!r}; "
                    "the exact method requires bounded functionals"
                )
        return g.kappa, g.kappa2, g.A_plus

    if t_max is None:
        raise DomainError("numeric bound fallback needs an explicit t_max")

    from .rng import derive_rng

    probe_rng = derive_rng(0, 0xB0)
    z_probes = [model.initial.z]
    for _ in range(16):
        z_probes.append(model.kernel_sampler(probe_rng.random(), model.initial))

    sup_sum = 0.0
    sup_g2 = 0.0
    sup_a = -math.inf
    n_t = grid
    n_x = grid if len(z_probes) == 1 else max(64, grid // 4)
    for z in z_probes:
        for i in range(n_t):
            t = t_max * i / (n_t - 1)
            beta_t = transformed_threshold(model, t, z)
            g1 = gamma1(model, t, z)
            for j in range(n_x):
                x = beta_t - x_span * (1.0 - j / (n_x - 1))
                g2 = gamma2(model, t, x, z)
                a_val = g.A(t, x, z)
                if g1 + g2 > sup_sum:
                    sup_sum = g1 + g2
                if g2 > sup_g2:
                    sup_g2 = g2
                if a_val > sup_a:
                    sup_a = a_val
    if not (math.isfinite(sup_sum) and math.isfinite(sup_g2) and math.isfinite(sup_a)):
        raise AssumptionViolationError(
            "numeric bound supremum is not finite; model rejected for the exact method"
        )
    # inflating a negative supremum must move it toward zero, not away
    a_plus = sup_a * safety if sup_a > 0.0 else sup_a / safety
    return safety * sup_sum, safety * sup_g2, a_plus
