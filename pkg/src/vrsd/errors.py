"""Exception hierarchy shared by every module of the toolkit."""


class VRSDError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(VRSDError, ValueError):
    pass


class ZeroNorm(VRSDError, ValueError):
    pass


class NonFiniteValue(VRSDError, ValueError):
    pass


class EmptyInput(VRSDError, ValueError):
    pass


class DuplicateId(VRSDError, ValueError):
    pass


class KTooLarge(VRSDError, ValueError):
    pass


class InvalidLambda(VRSDError, ValueError):
    pass


class InvalidScenario(VRSDError, ValueError):
    pass


class EnumerationCapExceeded(VRSDError):
    """Raised when an exhaustive search would exceed its subset budget."""

    def __init__(self, required: int, cap: int):
        self.required = required
        self.cap = cap
        super().__init__(f"enumeration needs {required} subsets, cap is {cap}")


class InstanceTooLarge(VRSDError, ValueError):
    pass


class ZeroQuery(VRSDError, ValueError):
    pass


class NotACertificate(VRSDError, ValueError):
    pass


class MissingTag(VRSDError, KeyError):
    pass


class ParseError(VRSDError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IoError(VRSDError, OSError):
    pass


class QueryFailed(VRSDError):
    """Wraps an algorithm error raised while processing one query of a suite."""

    def __init__(self, query_id: str, cause: Exception):
        self.query_id = query_id
        self.cause = cause
        super().__init__(f"query {query_id!r}: {type(cause).__name__}: {cause}")
