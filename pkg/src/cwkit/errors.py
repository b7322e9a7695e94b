"""Exception hierarchy shared by the library and the CLI."""


class CwkitError(Exception):
    """Base class. ``category`` selects the CLI exit code."""

    category = "error"


class ParseError(CwkitError):
    category = "parse"

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class PreconditionError(CwkitError):
    category = "precondition"


class NotUnitIntervalError(PreconditionError):
    """Raised when a graph has no unit interval model.

    ``witness`` names the violated condition and the offending vertices.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class VerificationError(CwkitError):
    category = "verification"


class SizeCapError(CwkitError):
    category = "size-cap"
