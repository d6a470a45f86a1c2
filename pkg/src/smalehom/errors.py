"""Exception hierarchy shared by every layer of the package."""


class SmaleHomologyError(Exception):
    """Base class for all errors raised by smalehom."""


class ValidationError(SmaleHomologyError, ValueError):
    """Input data is malformed or outside the supported range."""


class DimensionError(ValidationError):
    """Matrix shapes do not fit the requested operation."""


class InvariantViolation(SmaleHomologyError):
    """An internal consistency check failed on otherwise well-formed data."""


class CommutationError(InvariantViolation):
    """Two maps that must commute do not."""

    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


class BoundarySquareError(InvariantViolation):
    """A boundary composed with the next one is not the zero map."""

    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree
