"""Exception hierarchy shared by every module."""


class CasimirError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CasimirError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class SolverError(CasimirError, RuntimeError):
    """A numerical kernel could not deliver a result."""


class BracketError(SolverError):
    """The supplied root bracket does not contain a sign change."""


class ConvergenceError(SolverError):
    """Iteration limit reached before the tolerance was met."""


class AccuracyError(SolverError):
    """Quadrature tolerance not met; ``estimate`` and ``error`` hold the best effort."""

    def __init__(self, message, estimate, error):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class DilutenessWarning(UserWarning):
    """Input is outside the comfortably dilute regime (|eps-1| or |mu-1| > 0.05)."""
