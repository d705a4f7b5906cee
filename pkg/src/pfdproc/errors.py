"""Exception types shared across the package."""


class PfdprocError(Exception):
    """Base class for all package errors."""


class DomainError(PfdprocError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InfeasibleStatsError(PfdprocError, ValueError):
    """Moment statistics are incompatible with any parameter value (mean outside (0,1))."""


class DegenerateStatsError(PfdprocError, ValueError):
    """Moment statistics carry no information for a fit (all ascents, all descents, zero variance)."""


class QuadratureError(PfdprocError, RuntimeError):
    """Numerical integration failed to reach the requested tolerance within budget."""
