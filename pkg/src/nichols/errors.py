"""Exceptions shared across the package."""


class NicholsError(Exception):
    """Base class for all package errors."""


class InputError(NicholsError, ValueError):
    """Invalid input: malformed spec strings, domain violations, bad tables."""


class FieldMismatchError(InputError):
    """Arithmetic attempted between scalars of different fields."""


class BraidingError(NicholsError):
    """A constructed operator fails the braid equation or is not invertible."""

    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class ResourceLimitError(NicholsError):
    """A computation exceeded its resource budget.

    ``size`` is the offending problem size; ``report`` carries the partial
    result computed before the budget was hit, when one exists.
    """

    def __init__(self, message, size=None, report=None):
        super().__init__(message)
        self.size = size
        self.report = report
