"""Semantic exception hierarchy shared by all bakerlab modules."""


class BakerlabError(Exception):
    """Base class for every error raised by this package."""


class DomainError(BakerlabError, ValueError):
    """An argument lies outside its documented domain."""


class ConsistencyError(BakerlabError, ArithmeticError):
    """An internal invariant was violated beyond numerical slack."""


class ConvergenceError(BakerlabError, RuntimeError):
    """An iterative routine failed to reach its tolerance.

    ``estimates`` carries the last successive estimates so callers can
    report how far the iteration got.
    """

    def __init__(self, message: str, estimates: tuple = ()):
        super().__init__(message)
        self.estimates = tuple(estimates)


class UnsupportedKernelError(BakerlabError, TypeError):
    """The requested operation is not available for this copula."""


class DegenerateSampleError(BakerlabError, ValueError):
    """A sample statistic is undefined (e.g. a zero-variance coordinate)."""
