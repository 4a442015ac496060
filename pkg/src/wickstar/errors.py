"""Exception hierarchy shared across the package."""


class WickstarError(Exception):
    """Base class for all package-specific errors."""


class DomainError(WickstarError, ValueError):
    """Input lies outside the mathematical domain of an operation
    (point outside the surface, deformation parameter at a pole,
    singular Moebius matrix, ...)."""


class NonRepresentableError(WickstarError, ValueError):
    """An operation requires a representation the input does not admit
    (conjugate of a disk function, involution outside the basis span)."""


class SeriesOrderError(WickstarError, ValueError):
    """A truncated-series function was asked for a derivative or an
    evaluation beyond its certified order / radius."""


class NonTerminatingError(WickstarError, ValueError):
    """Exact-finite evaluation was requested for a star-product series
    that does not terminate for the given operands."""


class ConvergenceError(WickstarError, RuntimeError):
    """A numerically truncated series failed to converge within the
    configured term budget."""
