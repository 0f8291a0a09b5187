"""Exception types shared across the laboratory."""


class LabError(Exception):
    """Base class so callers can catch any laboratory error in one clause."""


class NormalizationError(LabError):
    """An amplitude vector or probability vector is not normalized."""


class DimensionError(LabError):
    """Operands have incompatible or unsupported dimensions."""


class NumericalError(LabError):
    """A numerical routine produced a value outside its guaranteed range."""


class SupportError(LabError):
    """The support condition for a divergence-like quantity fails (infinite result)."""


class ParameterError(LabError):
    """A parameter is outside its documented domain."""


class RangeError(LabError):
    """A numeric argument is outside its permitted interval."""


class LengthError(LabError):
    """A sequence argument has an unusable length."""


class SpaceTooLargeError(LabError):
    """An exhaustive enumeration was requested over a space too large to enumerate."""


class InvalidPairError(LabError):
    """A submitted challenge pair is degenerate (e.g. the two messages are equal)."""


class QueryBudgetError(LabError):
    """An oracle adversary exceeded its declared query budget."""


class UnknownNameError(LabError):
    """A registry lookup used a name that is not registered."""


class UsageError(LabError):
    """Command-line arguments do not form a runnable request."""
