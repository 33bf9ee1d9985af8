"""Exception hierarchy shared by all modules.

Exit-code mapping used by the CLI lives in cli.py; the service maps the
same exceptions onto HTTP statuses.
"""


class RealPoincareError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(RealPoincareError):
    """Branch input text does not conform to the grammar."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class ValidationError(RealPoincareError):
    """Input parses but violates a domain precondition (e.g. non-primitive)."""


class PrecisionExhausted(RealPoincareError):
    """A series coefficient at or above the truncation order was requested.

    Recoverable: the caller may rerun the whole computation at a higher
    truncation order (all inputs are polynomials, so any order can be
    regenerated from scratch).
    """


class ResourceError(RealPoincareError):
    """A configured cap (matrix size, truncation ceiling) was exceeded."""


class InvariantViolation(RealPoincareError):
    """An internal identity that must hold by theory failed.

    Never expected on any input; indicates a bug, so callers should not
    catch this except to abort with the diagnostic message.
    """
