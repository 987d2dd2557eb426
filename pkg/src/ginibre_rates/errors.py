"""Exception hierarchy shared by every module."""


class GinibreError(Exception):
    """Base class for all toolkit errors."""


class DomainError(GinibreError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SchemeError(DomainError):
    """A scaling scheme is undefined or does not match the requested statistic."""


class SizeError(GinibreError, ValueError):
    """A matrix size exceeds what an evaluation path supports."""


class ConvergenceError(GinibreError, RuntimeError):
    """A quadrature or iteration failed to meet its tolerance."""
