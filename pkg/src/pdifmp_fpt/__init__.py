"""Exact first-passage-time sampling for piecewise diffusion Markov processes.

The package draws discretization-free samples of the first time the
continuous component of a hybrid jump-diffusion reaches a time-varying
threshold, censored at a terminal horizon, and ships a fine-grid
Euler-Maruyama baseline plus statistical comparison tooling.
"""

from .brownian import (
    BridgeSkeleton,
    LineBarrier,
    bessel_bridge_point,
    fpt_to_line,
    sample_inverse_gaussian,
)
from .conditional import (
    ConditionalConfig,
    ConditionalPoint,
    sample_conditional_point,
    sample_value_at_jump,
)
from .errors import (
    AssumptionViolationError,
    BatchSampleError,
    ConfigError,
    DomainError,
    ModelEvaluationError,
    PDifMPError,
    SamplingBudgetError,
    UnsupportedThresholdError,
)
from .exact_fpt import (
    ContinuousFPTResult,
    sample_candidate_fpt,
    simulate_fpt_continuous,
)
from .hybrid import (
    FPTSample,
    run_batch,
    sample_jump_waiting_time,
    simulate_fpt,
)
from .model import (
    CATALOG,
    HybridState,
    PDifMPModel,
    Threshold,
    apply_jump,
    catalog_example1,
    catalog_example2,
)
from .reference_em import run_em_batch, simulate_em_fpt
from .stats import ComparisonReport, compare_samples, ecdf, kde_gaussian, ks_two_sample
from .transform import (
    GirsanovData,
    bounds,
    gamma1,
    gamma2,
    lamperti_forward,
    lamperti_inverse,
    transformed_threshold,
)

__version__ = "0.1.0"
