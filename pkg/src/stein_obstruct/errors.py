"""Exception types raised across the package."""


class SteinObstructError(Exception):
    """Base class for all errors raised by stein_obstruct."""


class DimensionMismatch(SteinObstructError, ValueError):
    pass


class ContainmentViolation(SteinObstructError, ValueError):
    """span(small) is not contained in span(big)."""


class SingularSubstitution(SteinObstructError, ValueError):
    pass


class TopIndexTooSmall(SteinObstructError, ValueError):
    pass


class InvalidComplex(SteinObstructError, ValueError):
    pass


class OutOfRange(SteinObstructError, ValueError):
    pass


class UnusedCoefficient(SteinObstructError, LookupError):
    """A coefficient group that the 7-line never needs was consumed."""


class InconsistentFlags(SteinObstructError, ValueError):
    pass


class MalformedPartition(SteinObstructError, ValueError):
    pass


class BadDimension(SteinObstructError, ValueError):
    pass
