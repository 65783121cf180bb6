"""Command-line front end.

Three subcommands:

* ``sample``: run one batch (exact or Euler-Maruyama) from a JSON config and
  write the samples as CSV;
* ``compare``: run exact batches for every configured slope floor plus one
  EM batch, write a JSON report with the per-floor KS results, the density
  CSVs, and a rendered density figure;
* ``catalog``: list the built-in models with a config skeleton.

Exit codes: 0 success, 2 configuration error, 3 runtime sampling error.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .config import load_config
from .errors import ConfigError, PDifMPError
from .hybrid import run_batch
from .model import CATALOG
from .reference_em import run_em_batch
from .report import comparison_outputs, write_samples_csv
from .stats import compare_samples

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


def _taus(samples) -> np.ndarray:
    return np.array([s.tau for s in samples])


def cmd_sample(config_path, method: str, out_path) -> int:
    cfg = load_config(config_path)
    if method == "exact":
        if len(cfg.s_min_values) != 1:
            raise ConfigError(
                "the sample command needs a scalar exact.s_min; lists are for compare"
            )
        model = cfg.build_model()
        samples = run_batch(
            model,
            cfg.t_f,
            cfg.conditional_config(cfg.s_min_values[0]),
            cfg.n,
            cfg.seed,
            cfg.workers,
        )
    elif method == "em":
        samples = run_em_batch(cfg.build_model(), cfg.t_f, cfg.em_h, cfg.n, cfg.seed, cfg.workers)
    else:
        raise ConfigError(f"unknown method {method!r}; expected 'exact' or 'em'")
    write_samples_csv(out_path, samples)
    return EXIT_OK


def cmd_compare(config_path, out_path) -> int:
    cfg = load_config(config_path)
    model = cfg.build_model()

    em_samples = run_em_batch(model, cfg.t_f, cfg.em_h, cfg.n, cfg.seed, cfg.workers)
    em_taus = _taus(em_samples)

    results = []
    exact_sets = {}
    for s_min in cfg.s_min_values:
        batch = run_batch(
            model, cfg.t_f, cfg.conditional_config(s_min), cfg.n, cfg.seed, cfg.workers
        )
        taus = _taus(batch)
        exact_sets[s_min] = taus
        report = compare_samples(
            taus,
            em_taus,
            settings={
                "model": cfg.model_name,
                "s_min": s_min,
                "epsilon": cfg.epsilon,
                "n": cfg.n,
                "seed": cfg.seed,
                "em_h": cfg.em_h,
                "Tf": cfg.t_f,
                "lambda": cfg.jump_rate,
            },
        )
        results.append(
            {
                "s_min": s_min,
                "ks_d": report.ks_d,
                "p_value": report.p_value,
                "mean_exact": report.mean1,
                "var_exact": report.var1,
                "mean_em": report.mean2,
                "var_em": report.var2,
                "n_censored_exact": int(sum(s.censored for s in batch)),
            }
        )

    doc = {
        "model": cfg.model_name,
        "n": cfg.n,
        "seed": cfg.seed,
        "em_h": cfg.em_h,
        "Tf": cfg.t_f,
        "lambda": cfg.jump_rate,
        "epsilon": cfg.epsilon,
        "n_censored_em": int(sum(s.censored for s in em_samples)),
        "results": results,
    }
    out = Path(out_path)
    out.write_text(json.dumps(doc, indent=2) + "\n")
    files = comparison_outputs(
        out, exact_sets, em_taus, f"FPT densities, {cfg.model_name} (n={cfg.n})"
    )
    for f in files:
        print(f"wrote {f}")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_catalog() -> int:
    for name in sorted(CATALOG):
        print(name)
    skeleton = {
        "model": "example1",
        "lambda": 1.0,
        "y0": -1.0,
        "threshold": {"intercept": 1.0, "slope": -1.0},
        "Tf": 3.0,
        "n": 3000,
        "seed": 0,
        "workers": 1,
        "exact": {"s_min": [-2.0, -5.0, -10.0], "s_decrement": 1.0, "epsilon": 1e-3},
        "em": {"h": 1e-3},
    }
    print("\nconfig skeleton:")
    print(json.dumps(skeleton, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdifmp-fpt",
        description="Exact first-passage-time sampling for hybrid jump diffusions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("sample", help="draw one batch and write samples as CSV")
    ps.add_argument("--config", required=True, help="JSON run configuration")
    ps.add_argument("--method", required=True, choices=["exact", "em"])
    ps.add_argument("--out", required=True, help="output CSV path")

    pc = sub.add_parser("compare", help="exact-vs-EM comparison report")
    pc.add_argument("--config", required=True, help="JSON run configuration")
    pc.add_argument("--out", required=True, help="output JSON report path")

    sub.add_parser("catalog", help="list built-in models")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sample":
            return cmd_sample(args.config, args.method, args.out)
        if args.command == "compare":
            return cmd_compare(args.config, args.out)
        return cmd_catalog()
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PDifMPError as exc:
        print(f"sampling error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
