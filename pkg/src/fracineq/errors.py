"""Exception hierarchy shared by every module."""


class FracIneqError(Exception):
    """Base class for library errors."""


class DomainError(FracIneqError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class QuadratureError(FracIneqError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance.

    The best estimate and its error bound are kept so callers can still
    decide what to do with a partially converged value.
    """

    def __init__(self, message, estimate, error, subdivisions):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
        self.subdivisions = subdivisions


class HypothesisError(FracIneqError):
    """A theorem's hypothesis was rejected by the numerical classifier."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class EvaluationError(FracIneqError):
    """A user function returned a non-finite value on a sample point."""
