"""Exception hierarchy shared by every module."""


class LaurentError(Exception):
    """Base class for all library errors."""


class DescriptorError(LaurentError, ValueError):
    """Invalid ring descriptor (duplicate names, bad orders, bad modulus)."""


class NotAUnitError(LaurentError, ArithmeticError):
    """An element that has to be invertible is not."""


class PrecisionError(LaurentError):
    """Known coefficients do not determine the requested result."""


class UnsupportedError(LaurentError):
    """Operation is not available over the configured ring."""


class ValidationError(LaurentError, ValueError):
    """A value does not have the required shape."""


class WindowError(LaurentError):
    """Stabilization of a truncated operator was not observed in the window."""


class ConsistencyError(LaurentError):
    """Two independent computations disagree. Indicates a bug."""

    def __init__(self, message, *values):
        super().__init__(message)
        self.values = values


class ParseError(LaurentError, ValueError):
    """Malformed literal; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
