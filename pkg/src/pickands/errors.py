"""Exception types shared across the package."""


class DomainError(ValueError):
    """Parameters outside the domain where a quantity is defined."""


class InsufficientDataError(DomainError):
    """Too few threshold exceedances for an empirical estimate."""


class QuadratureError(ArithmeticError):
    """Base class for failures of the semi-infinite quadrature."""

    def __init__(self, message, value=float("nan"), error_estimate=float("inf")):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


class DivergenceError(QuadratureError):
    """The integral is infinite (partial sums grow without bound)."""


class NonConvergenceError(QuadratureError):
    """The error estimate stalled above the requested tolerance."""
