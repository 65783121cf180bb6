"""Comparison reports: delimited outputs plus rendered density figures.

The comparison command emits, next to its JSON report, one two-column CSV
per kernel density estimate (grid, density) and a single PNG overlaying the
exact-method densities for every slope floor against the Euler-Maruyama
baseline, in the style of the published density plots.
"""

import csv
from pathlib import Path

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .stats import kde_gaussian

__all__ = ["write_samples_csv", "write_kde_csv", "density_grid", "render_density_figure"]

SAMPLES_HEADER = ["sample_index", "tau", "censored", "jumps_before", "crossed_by_jump"]


def write_samples_csv(path, samples):
    """Write one batch of FPT samples with the stable CSV schema."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SAMPLES_HEADER)
        for k, s in enumerate(samples):
            w.writerow([k, repr(s.tau), int(s.censored), s.jumps_before, int(s.crossed_by_jump)])


def density_grid(sample_sets, points: int = 256) -> np.ndarray:
    lo = min(float(np.min(s)) for s in sample_sets)
    hi = max(float(np.max(s)) for s in sample_sets)
    pad = 0.05 * (hi - lo or 1.0)
    return np.linspace(lo - pad, hi + pad, points)


def write_kde_csv(path, grid, density):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["grid", "density"])
        for g, d in zip(grid, density):
            w.writerow([repr(float(g)), repr(float(d))])


def render_density_figure(path, grid, labelled_densities, title):
    """Overlay labelled densities on one grid and save a PNG."""
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    for label, density, style in labelled_densities:
        ax.plot(grid, density, label=label, **style)
    ax.set_xlabel("first-passage time")
    ax.set_ylabel("density")
    ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def comparison_outputs(out_path, exact_sets, em_taus, title):
    """KDE CSVs + overlay figure for one comparison run.

    ``exact_sets`` maps the slope floor to its tau array.  Returns the list
    of files written.
    """
    out = Path(out_path)
    base = out.with_suffix("")
    written = []
    grid = density_grid(list(exact_sets.values()) + [em_taus])

    em_density = kde_gaussian(em_taus, grid)
    em_csv = base.parent / (base.name + "_kde_em.csv")
    write_kde_csv(em_csv, grid, em_density)
    written.append(em_csv)

    curves = []
    for s_min, taus in exact_sets.items():
        density = kde_gaussian(taus, grid)
        kde_csv = base.parent / (base.name + f"_kde_exact_smin{s_min:g}.csv")
        write_kde_csv(kde_csv, grid, density)
        written.append(kde_csv)
        curves.append((f"exact, s_min = {s_min:g}", density, {"linewidth": 1.6}))
    curves.append(("Euler-Maruyama", em_density, {"color": "black", "linestyle": "--", "linewidth": 2.0}))

    fig_path = base.parent / (base.name + "_density.png")
    render_density_figure(fig_path, grid, curves, title)
    written.append(fig_path)
    return written
