"""Exception types shared by every module."""


class GeodesyError(Exception):
    """Base class for all package errors."""


class InvalidArgument(GeodesyError, ValueError):
    """An input violates a documented precondition."""


class ResourceLimit(GeodesyError, RuntimeError):
    """A computation would exceed the configured memory cap."""


class OutOfRange(GeodesyError, IndexError):
    """A query lies outside the data that was computed."""


class UndefinedInput(GeodesyError, ValueError):
    """The requested quantity is undefined for this input (e.g. curvature of the identity)."""


class NotApplicable(GeodesyError, ValueError):
    """A predicate was evaluated outside the hypotheses under which it is stated."""


class InternalConsistencyError(GeodesyError, AssertionError):
    """Two independent computations that must agree did not."""


class VerificationFailed(GeodesyError, AssertionError):
    """A checked claim (curvature sign, oracle equality) does not hold."""

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details
