class OrbitopeError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(OrbitopeError, ValueError):
    """An argument lies outside the domain of an operation (bad index, wrong shape, ...)."""


class CapacityError(OrbitopeError):
    """A hard size guard refused to run an exhaustive computation."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound
