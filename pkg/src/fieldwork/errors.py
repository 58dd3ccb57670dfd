"""Exception hierarchy shared across the package."""


class FieldworkError(Exception):
    """Base class for all package-specific errors."""


class InvalidArgumentError(FieldworkError, ValueError):
    """An argument is outside the documented domain (non-finite, wrong sign, ...)."""


class RegimeError(FieldworkError):
    """The requested operation does not apply to this physical regime
    (e.g. a perturbative formula called with a delta switching)."""


class ConvergenceError(FieldworkError):
    """A quadrature or discretization failed to reach its tolerance.

    Carries the best available estimate and the reported error bound so callers
    can still inspect the partial result.
    """

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class InconsistencyError(FieldworkError):
    """Two internal routes to the same quantity disagree beyond tolerance."""


class ConfigError(FieldworkError):
    """A run configuration file could not be parsed or validated."""
