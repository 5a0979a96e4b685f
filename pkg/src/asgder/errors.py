"""Exception classes shared across the package."""


class AsgderError(Exception):
    """Base class for all package errors."""


class DivisionByZero(AsgderError, ZeroDivisionError):
    pass


class InvalidPosition(AsgderError, ValueError):
    pass


class DegenerateRelator(AsgderError, ValueError):
    pass


class NotQuadratic(AsgderError, ValueError):
    pass


class ConfluenceNotEstablished(AsgderError):
    pass


class InconsistencyFound(AsgderError):
    pass


class NotRealizable(AsgderError, ValueError):
    pass


class TruncationOverflow(AsgderError, ValueError):
    pass


class InvalidModule(AsgderError, ValueError):
    pass


class InvalidSeedElement(AsgderError, ValueError):
    pass


class MalformedElement(AsgderError, ValueError):
    pass


class ResourceGuard(AsgderError, RuntimeError):
    pass


class HypothesisNotMet(AsgderError, ValueError):
    pass


class InputError(MalformedElement):
    """Malformed input data; ``path`` locates the offending entry."""

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
