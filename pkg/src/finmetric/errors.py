"""Exception hierarchy shared by all modules."""


class MetricError(Exception):
    """Base class for errors raised by finmetric."""


class StructureError(MetricError, ValueError):
    """Malformed input: non-square matrix, NaN or infinite entries, bad shapes."""


class DomainError(MetricError, ValueError):
    """Well-formed input that violates an operation's precondition."""


class DimensionError(DomainError):
    """Operands of mismatched size."""


class SamplingError(MetricError, RuntimeError):
    """Rejection sampling gave up."""
