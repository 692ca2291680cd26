"""Exception hierarchy shared by the library and the command line."""


class SpinflipError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(SpinflipError, ValueError):
    """Shapes do not match, or an instance exceeds a configured size cap."""


class ValidationError(SpinflipError, ValueError):
    """A matrix or vector fails a numerical state check (Hermiticity, trace, PSD, norm)."""


class ConvergenceError(SpinflipError, ArithmeticError):
    """An iterative kernel did not converge within its sweep budget."""


class DomainError(SpinflipError, ValueError):
    """A family parameter lies outside its admissible domain."""


class SpecParseError(SpinflipError, ValueError):
    """Malformed family specification text.

    ``position`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
