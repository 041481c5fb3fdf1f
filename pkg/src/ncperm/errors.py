"""Exceptions shared across the package."""


class InvalidInputError(ValueError):
    """Raised when an argument violates a documented precondition."""


class GroupTooLargeError(RuntimeError):
    """Raised when a Coxeter matrix generates a group that is infinite or
    exceeds the configured size cap."""


class InternalConsistencyError(AssertionError):
    """Raised when a certified internal identity fails; indicates a bug."""
