"""JSON run configuration shared by the sampling and comparison commands.

One file drives both the exact and the Euler-Maruyama method so comparisons
are apples to apples::

    {
      "model": "example1",
      "lambda": 1.0,
      "y0": -1.0,
      "threshold": {"intercept": 1.0, "slope": -1.0},
      "Tf": 3.0,
      "n": 3000,
      "seed": 0,
      "workers": 1,
      "exact": {"s_min": -10.0, "s_decrement": 1.0, "epsilon": 1e-3},
      "em": {"h": 1e-3}
    }

``exact.s_min`` may be a list for the comparison command (one exact batch per
entry); the sampling command requires a scalar.
"""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .conditional import ConditionalConfig
from .errors import ConfigError
from .model import CATALOG

__all__ = ["RunConfig", "load_config"]

_TOP_KEYS = {"model", "lambda", "y0", "threshold", "Tf", "n", "seed", "workers", "exact", "em"}


@dataclass(frozen=True)
class RunConfig:
    model_name: str
    jump_rate: float = 1.0
    y0: float = -1.0
    intercept: float = 1.0
    slope: float = -1.0
    t_f: float = 3.0
    n: int = 3000
    seed: int = 0
    workers: int = 1
    s_min_values: tuple = (-10.0,)
    s_decrement: float = 1.0
    epsilon: float = 1e-3
    em_h: float = 1e-3
    raw: dict = field(default_factory=dict)

    def build_model(self):
        factory = CATALOG[self.model_name]
        return factory(
            jump_rate=self.jump_rate,
            y0=self.y0,
            intercept=self.intercept,
            slope=self.slope,
        )

    def conditional_config(self, s_min: float) -> ConditionalConfig:
        return ConditionalConfig.for_model(
            self.build_model(),
            s_min=s_min,
            s_decrement=self.s_decrement,
            epsilon=self.epsilon,
        )


def _require_number(value, key, positive=False, integer=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"config field {key!r} must be a number, got {value!r}")
    if integer and int(value) != value:
        raise ConfigError(f"config field {key!r} must be an integer, got {value!r}")
    if positive and not value > 0:
        raise ConfigError(f"config field {key!r} must be positive, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"config field {key!r} must be finite, got {value!r}")
    return float(value)


def load_config(path) -> RunConfig:
    """Parse and validate a run configuration file."""
    p = Path(path)
    try:
        doc = json.loads(p.read_text())
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {p}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {p} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    name = doc.get("model")
    if name not in CATALOG:
        raise ConfigError(
            f"config field 'model' must be one of {sorted(CATALOG)}, got {name!r}"
        )

    thr = doc.get("threshold", {})
    if not isinstance(thr, dict) or set(thr) - {"intercept", "slope"}:
        raise ConfigError("config field 'threshold' must be {intercept, slope}")

    exact = doc.get("exact", {})
    if not isinstance(exact, dict) or set(exact) - {"s_min", "s_decrement", "epsilon"}:
        raise ConfigError("config field 'exact' must be {s_min, s_decrement, epsilon}")
    s_min_raw = exact.get("s_min", -10.0)
    if isinstance(s_min_raw, list):
        if not s_min_raw:
            raise ConfigError("exact.s_min list must not be empty")
        s_min_values = tuple(_require_number(v, "exact.s_min[]") for v in s_min_raw)
    else:
        s_min_values = (_require_number(s_min_raw, "exact.s_min"),)

    em = doc.get("em", {})
    if not isinstance(em, dict) or set(em) - {"h"}:
        raise ConfigError("config field 'em' must be {h}")

    return RunConfig(
        model_name=name,
        jump_rate=_require_number(doc.get("lambda", 1.0), "lambda", positive=True),
        y0=_require_number(doc.get("y0", -1.0), "y0"),
        intercept=_require_number(thr.get("intercept", 1.0), "threshold.intercept"),
        slope=_require_number(thr.get("slope", -1.0), "threshold.slope"),
        t_f=_require_number(doc.get("Tf", 3.0), "Tf", positive=True),
        n=int(_require_number(doc.get("n", 3000), "n", positive=True, integer=True)),
        seed=int(_require_number(doc.get("seed", 0), "seed", integer=True)),
        workers=int(_require_number(doc.get("workers", 1), "workers", positive=True, integer=True)),
        s_min_values=s_min_values,
        s_decrement=_require_number(exact.get("s_decrement", 1.0), "exact.s_decrement", positive=True),
        epsilon=_require_number(exact.get("epsilon", 1e-3), "exact.epsilon", positive=True),
        em_h=_require_number(em.get("h", 1e-3), "em.h", positive=True),
        raw=doc,
    )
