"""Exception hierarchy for the sampler library.

All library-specific failures derive from :class:`PDifMPError`, so callers
(and the CLI) can separate config problems from runtime sampling problems.
"""


class PDifMPError(Exception):
    """Base class for all library errors."""


class ConfigError(PDifMPError):
    """A run configuration could not be parsed or validated."""


class ModelEvaluationError(PDifMPError):
    """A model coefficient returned a non-finite or otherwise invalid value."""


class DomainError(PDifMPError):
    """An operation was called outside its mathematical domain.

    Examples: non-positive diffusion coefficient at an evaluation point,
    a first-passage query started past the barrier, or a bridge advanced
    beyond its pinned endpoint.
    """


class AssumptionViolationError(PDifMPError):
    """A structural assumption of the exact method failed at runtime.

    Raised when gamma1/gamma2 evaluate negative beyond tolerance, or when a
    required uniform bound (kappa, kappa2, A_plus) is not finite.
    """


class UnsupportedThresholdError(PDifMPError):
    """Candidate first-passage sampling is unavailable for this threshold.

    The exact candidate law is only built in for thresholds whose transformed
    image is a straight line; anything else needs a user-supplied sampler.
    """


class SamplingBudgetError(PDifMPError):
    """A rejection loop exhausted its iteration budget.

    This is a diagnostic: it usually means the model's bounds are badly
    mis-specified (acceptance rate close to zero) rather than a transient
    failure.
    """


class BatchSampleError(PDifMPError):
    """A Monte Carlo batch failed while drawing one sample.

    Carries the failing sample index so batches are debuggable.
    """

    def __init__(self, index: int, message: str):
        super().__init__(f"sample {index}: {message}")
        self.index = index
