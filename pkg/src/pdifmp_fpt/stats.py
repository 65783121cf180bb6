"""Empirical comparison tooling: ECDF, two-sample KS test, Gaussian KDE.

The KS p-value uses the asymptotic Kolmogorov distribution at the effective
sample size n1*n2/(n1+n2); every experiment in this package runs with
thousands of samples, where the asymptotic form is standard.  Censored
samples enter comparisons at their censoring value, matching the
min(tau, horizon) target law.
"""

import json
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.special import kolmogorov

__all__ = ["ComparisonReport", "ecdf", "ks_two_sample", "kde_gaussian", "compare_samples"]


@dataclass(frozen=True)
class ComparisonReport:
    """Two-sample comparison summary, JSON-serializable."""

    n1: int
    n2: int
    ks_d: float
    p_value: float
    mean1: float
    var1: float
    mean2: float
    var2: float
    settings: dict

    def to_json(self, **kwargs) -> str:
        return json.dumps(asdict(self), **kwargs)


def ecdf(a, x: float) -> float:
    """Fraction of samples <= x (right-continuous step function)."""
    arr = np.asarray(a, dtype=float)
    if arr.size == 0:
        raise ValueError("ecdf needs a non-empty sample")
    return float(np.count_nonzero(arr <= x)) / arr.size


def ks_two_sample(a, b):
    """Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value."""
    xa = np.sort(np.asarray(a, dtype=float))
    xb = np.sort(np.asarray(b, dtype=float))
    n1, n2 = xa.size, xb.size
    if n1 == 0 or n2 == 0:
        raise ValueError("ks_two_sample needs two non-empty samples")
    grid = np.concatenate([xa, xb])
    fa = np.searchsorted(xa, grid, side="right") / n1
    fb = np.searchsorted(xb, grid, side="right") / n2
    d = float(np.max(np.abs(fa - fb)))
    n_eff = n1 * n2 / (n1 + n2)
    p = float(kolmogorov(math.sqrt(n_eff) * d))
    return d, p


def kde_gaussian(a, grid):
    """Gaussian kernel density on ``grid`` with Silverman bandwidth.

    Bandwidth 1.06 * std * n^(-1/5); needs at least two samples with nonzero
    spread.
    """
    x = np.asarray(a, dtype=float)
    g = np.asarray(grid, dtype=float)
    if x.size < 2:
        raise ValueError("kde_gaussian needs at least two samples")
    sd = float(np.std(x, ddof=1))
    if sd == 0.0:
        raise ValueError("kde_gaussian needs a sample with nonzero variance")
    h = 1.06 * sd * x.size ** (-0.2)
    norm = 1.0 / (math.sqrt(2.0 * math.pi) * h * x.size)
    out = np.empty_like(g)
    block = max(1, 2 ** 22 // max(x.size, 1))
    for i in range(0, g.size, block):
        gj = g[i:i + block, None]
        out[i:i + block] = norm * np.exp(-0.5 * ((gj - x[None, :]) / h) ** 2).sum(axis=1)
    return out


def compare_samples(a, b, settings=None) -> ComparisonReport:
    xa = np.asarray(a, dtype=float)
    xb = np.asarray(b, dtype=float)
    d, p = ks_two_sample(xa, xb)
    return ComparisonReport(
        n1=int(xa.size),
        n2=int(xb.size),
        ks_d=d,
        p_value=p,
        mean1=float(xa.mean()),
        var1=float(xa.var(ddof=1)) if xa.size > 1 else 0.0,
        mean2=float(xb.mean()),
        var2=float(xb.var(ddof=1)) if xb.size > 1 else 0.0,
        settings=dict(settings or {}),
    )
