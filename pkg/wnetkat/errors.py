class WnkError(Exception):
    """Base class of every error raised by wnetkat."""


class AlgebraError(WnkError, ValueError):
    """A value is outside the carrier of the semiring it is used with."""


class SchemaError(WnkError, ValueError):
    """Unknown field or value, or a malformed field schema."""


class PolicyParseError(SchemaError):
    """Lexical or syntactic error in policy text.

    Args:
        message (str): What went wrong.
        line (int): 1-based line of the offending token.
        col (int): 1-based column of the offending token.
    """

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{line}:{col}: {message}"
        super().__init__(message)


class DimensionError(WnkError, ValueError):
    pass


class CapabilityError(WnkError):
    """The semiring does not satisfy the side conditions of a decision procedure."""


class ResourceCapError(WnkError):
    """A configurable limit (packets, dup-length, runs) was exceeded."""


class TopologyError(WnkError, ValueError):
    """Invalid topology file. Messages are prefixed with the offending JSON path."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
